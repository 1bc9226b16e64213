#include "curvelim/cert/certificate.hpp"

#include <openssl/evp.h>

#include <cstdio>

#include "curvelim/exactpoly/errors.hpp"

namespace curvelim {

void GeneratorSet::add(Relation r) {
  if (r.poly.is_zero()) throw StructuralError("generator '" + r.id + "' is the zero polynomial");
  if (find(r.id)) throw StructuralError("duplicate generator id '" + r.id + "'");
  relations_.push_back(std::move(r));
}

void GeneratorSet::add(std::string id, Polynomial poly) {
  add(Relation{std::move(id), std::move(poly), {}, {}});
}

const Relation* GeneratorSet::find(const std::string& id) const {
  for (const auto& r : relations_) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

const Relation& GeneratorSet::at(const std::string& id) const {
  const Relation* r = find(id);
  if (!r) throw StructuralError("unknown generator id '" + id + "'");
  return *r;
}

std::vector<Polynomial> GeneratorSet::polys() const {
  std::vector<Polynomial> out;
  out.reserve(relations_.size());
  for (const auto& r : relations_) out.push_back(r.poly);
  return out;
}

std::vector<std::string> GeneratorSet::ids() const {
  std::vector<std::string> out;
  out.reserve(relations_.size());
  for (const auto& r : relations_) out.push_back(r.id);
  return out;
}

Polynomial Certificate::scaled_target() const {
  if (!multiplier || power == 0) return target;
  return pow(*multiplier, power) * target;
}

Polynomial Certificate::residual(const GeneratorSet& gens) const {
  Polynomial r = scaled_target();
  for (const auto& t : terms) r -= t.cofactor * gens.at(t.generator_id).poly;
  return r;
}

std::vector<std::string> Certificate::used_generators() const {
  std::vector<std::string> out;
  for (const auto& t : terms) {
    if (!t.cofactor.is_zero()) out.push_back(t.generator_id);
  }
  return out;
}

std::string Certificate::identity_text() const {
  std::string s;
  if (multiplier && power > 0) {
    s += "(" + to_string(*multiplier) + ")^" + std::to_string(power) + "*";
  }
  s += "[" + target_id + "](" + to_string(target) + ") =";
  if (terms.empty()) return s + " 0";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    s += i == 0 ? " " : " + ";
    s += "(" + to_string(terms[i].cofactor) + ")*[" + terms[i].generator_id + "]";
  }
  return s;
}

std::string Certificate::digest() const { return sha256_hex(identity_text()); }

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace curvelim
