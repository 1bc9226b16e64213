#include "curvelim/frame/codazzi.hpp"

#include "curvelim/frame/symbols.hpp"

namespace curvelim::frame {
namespace {

std::string w(int k, int i, int j) {
  return "w" + std::to_string(k) + std::to_string(i) + std::to_string(j);
}
std::string lam(int i) { return "lam" + std::to_string(i); }
std::string idx(int a, int b) { return std::to_string(a) + std::to_string(b); }
std::string idx(int a, int b, int c) { return idx(a, b) + std::to_string(c); }

class Builder {
 public:
  explicit Builder(VarTablePtr t) : reg_(t), table_(std::move(t)) {}

  void add(EntryKind kind, const std::string& id, const std::string& role, const std::string& text,
           const std::string& citation, const std::string& quote) {
    RegistryEntry e;
    e.id = id;
    e.kind = kind;
    e.role = role;
    e.text = text;
    e.poly = parse_frame_poly(text, table_);
    e.citation = citation;
    e.quote = quote;
    reg_.put(std::move(e));
  }
  void axiom(const std::string& id, const std::string& role, const std::string& text,
             const std::string& citation, const std::string& quote) {
    add(EntryKind::kAxiom, id, role, text, citation, quote);
  }
  void target(const std::string& id, const std::string& text, const std::string& citation,
              const std::string& quote) {
    add(EntryKind::kTarget, id, "", text, citation, quote);
  }

  EquationRegistry take() { return std::move(reg_); }

 private:
  EquationRegistry reg_;
  VarTablePtr table_;
};

}  // namespace

VarTablePtr codazzi_symbols() {
  static const VarTablePtr table = [] {
    std::vector<std::string> names = {"H", "h1", "lam2", "lam3", "lam4"};
    for (int k = 1; k <= 4; ++k)
      for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) names.push_back(w(k, i, j));
    for (int i = 1; i <= 4; ++i)
      for (int j = 2; j <= 4; ++j)
        if (i != j) names.push_back(jet_name({std::to_string(i), lam(j), 1}));
    for (int i = 2; i <= 4; ++i) names.push_back(jet_name({std::to_string(i), "H", 1}));
    return VarTable::make(std::move(names));
  }();
  return table;
}

EquationRegistry build_codazzi_registry() {
  Builder b(codazzi_symbols());
  const std::string c36 = "eq (3.6)";
  for (int k = 1; k <= 4; ++k) {
    for (int i = 1; i <= 4; ++i) {
      b.axiom("eq_3_6a_" + idx(k, i), "codazzi", w(k, i, i), c36, "\\omega_{ki}^i=0");
      for (int j = i + 1; j <= 4; ++j) {
        b.axiom("eq_3_6b_" + idx(k, i, j), "codazzi", w(k, i, j) + " + " + w(k, j, i), c36,
                "\\omega_{ki}^j+\\omega_{kj}^i=0");
      }
    }
  }
  for (int i = 1; i <= 4; ++i) {
    for (int j = 1; j <= 4; ++j) {
      if (i == j) continue;
      b.axiom("eq_3_7_" + idx(i, j), "codazzi",
              jet_name({std::to_string(i), lam(j), 1}) + " - (" + lam(i) + " - " + lam(j) + ")*" +
                  w(j, i, j),
              "eq (3.7)", "e_i(\\lambda_j)=(\\lambda_i-\\lambda_j)\\omega_{ji}^j");
    }
  }
  for (int i = 1; i <= 4; ++i) {
    for (int j = 1; j <= 4; ++j) {
      for (int k = i + 1; k <= 4; ++k) {
        if (i == j || k == j) continue;
        b.axiom("eq_3_8_" + idx(i, j, k), "codazzi",
                "(" + lam(i) + " - " + lam(j) + ")*" + w(k, i, j) + " - (" + lam(k) + " - " + lam(j) +
                    ")*" + w(i, k, j),
                "eq (3.8)",
                "(\\lambda_i-\\lambda_j)\\omega_{ki}^j=(\\lambda_k-\\lambda_j)\\omega_{ik}^j");
      }
    }
  }
  for (int i = 2; i <= 4; ++i) {
    for (int j = i + 1; j <= 4; ++j) {
      b.axiom("eq_3_9_" + idx(i, j), "codazzi", w(i, j, 1) + " - " + w(j, i, 1), "eq (3.9)",
              "\\omega_{ij}^1=\\omega_{ji}^1");
    }
    b.axiom("eq_3_4_" + std::to_string(i), "constraint", jet_name({std::to_string(i), "H", 1}),
            "eq (3.4)", "e_2(H)=e_3(H)=e_4(H)=0");
  }

  const std::string diff_quote = "we assume that $M$ has our distinct principal curvatures";
  for (int i = 1; i <= 4; ++i) {
    for (int j = i + 1; j <= 4; ++j) {
      b.add(EntryKind::kSaturation, "sat_l" + idx(i, j), "nondegeneracy", lam(i) + " - " + lam(j),
            i == 1 ? "eq (3.10)" : "eq (3.11)",
            i == 1 ? "Now we claim that $\\lambda_j\\neq\\lambda_1$ for $j=2, 3, 4$" : diff_quote);
    }
  }

  for (int i = 1; i <= 4; ++i) {
    b.target("eq_3_12_" + std::to_string(i), w(1, i, 1), "eq (3.12)",
             "\\omega_{1i}^1=0,\\quad i=1, 2, 3, 4.");
    b.target("eq_3_13_" + std::to_string(i), w(1, 1, i), "eq (3.13)",
             "\\omega_{11}^i=0,\\quad i=1, 2, 3, 4.");
  }
  for (int i = 2; i <= 4; ++i) {
    for (int j = 2; j <= 4; ++j) {
      if (i == j) continue;
      b.target("eq_3_14_" + idx(i, j), w(i, j, 1), "eq (3.14)", "\\omega_{ij}^1=\\omega_{ji}^1=0");
      b.target("eq_3_15_" + idx(i, j), w(i, 1, j), "eq (3.15)", "\\omega_{i1}^j=0");
      b.target("eq_3_16_" + idx(i, j), w(1, i, j), "eq (3.16)", "\\omega_{1i}^j=0");
    }
  }

  const std::string lemma = "Lemma 3.1";
  for (int i = 1; i <= 4; ++i) {
    for (int k = 1; k <= 4; ++k) {
      b.target("lemma31_e1_" + idx(i, k), w(1, i, k), lemma, "\\nabla_{e_1}e_i=0,\\quad i=1, 2, 3, 4");
    }
  }
  for (int i = 2; i <= 4; ++i) {
    for (int k = 1; k <= 4; ++k) {
      const std::string text = k == i ? w(i, 1, i) + " + " + w(i, i, 1) : w(i, 1, k);
      b.target("lemma31_ie1_" + idx(i, k), text, lemma,
               "\\nabla_{e_i}e_1=-\\omega_{ii}^1e_i,\\quad i=2, 3, 4");
    }
    b.target("lemma31_ii_" + std::to_string(i), w(i, i, i), lemma,
             "\\nabla_{e_i}e_i=\\sum_{k=1, k\\neq i}^{4}{\\omega_{ii}^k}e_k");
    for (int j = 2; j <= 4; ++j) {
      if (i == j) continue;
      const std::string q = "\\nabla_{e_i}e_j=-{\\omega_{ii}^j}e_i+\\omega_{ij}^ke_k";
      b.target("lemma31_ij_" + idx(i, j, 1), w(i, j, 1), lemma, q);
      b.target("lemma31_ij_" + idx(i, j, i), w(i, j, i) + " + " + w(i, i, j), lemma, q);
      b.target("lemma31_ij_" + idx(i, j, j), w(i, j, j), lemma, q);
      b.target("lemma31_omega_" + idx(i, j),
               "(" + lam(j) + " - " + lam(i) + ")*" + w(i, i, j) + " + " +
                   jet_name({std::to_string(j), lam(i), 1}),
               lemma, "\\omega_{ii}^j=-\\frac{e_j(\\lambda_i)}{\\lambda_j-\\lambda_i}");
    }
  }
  return b.take();
}

}  // namespace curvelim::frame
