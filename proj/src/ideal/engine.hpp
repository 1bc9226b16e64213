#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "curvelim/ideal/groebner.hpp"

namespace curvelim::detail {

std::uint64_t support_mask(const Exponent* e, std::size_t n);

// Divisors with leading data cached; polys share one table and order.
struct DivisorSet {
  std::vector<const Polynomial*> polys;
  std::vector<std::uint64_t> masks;

  void push(const Polynomial* p);
  // Index of the first divisor whose leading monomial divides e, or -1.
  long find(const Exponent* e, std::uint64_t mask, std::size_t n) const;
};

struct Reduction {
  Polynomial remainder;
  // quotients[i] multiplies divisor i; empty when not tracked.
  std::vector<Polynomial> quotients;
};

// Full reduction; p must share table and order with the divisors.
Reduction reduce(const Polynomial& p, const DivisorSet& divisors, bool track);

// Buchberger run whose elements remember how they were formed.
// Polynomials here live on the table/order passed in; callers compact first.
class Engine {
 public:
  Engine(std::vector<Polynomial> inputs, const MonomialOrder& order, const GroebnerLimits& limits);

  void run();

  // Indices into nodes() of the reduced basis, sorted by leading monomial descending.
  const std::vector<std::size_t>& basis() const { return basis_; }
  const Polynomial& element(std::size_t node) const { return nodes_[node].poly; }
  std::size_t pairs_reduced() const { return pairs_reduced_; }

  // Cofactors of node over the inputs: element == sum_j c[j] * inputs[j].
  const std::vector<Polynomial>& expand(std::size_t node);

 private:
  struct Node {
    Polynomial poly;
    std::optional<std::size_t> input;  // leaf: poly == scale * inputs[*input]
    Scalar scale;
    std::vector<std::pair<std::size_t, Polynomial>> parts;  // poly == scale * sum q * node
    std::uint64_t mask = 0;
  };
  struct Pair {
    std::size_t i, j;
    std::vector<Exponent> lcm;
  };

  std::size_t add_node(Node n);
  void update(std::size_t h);
  Node s_polynomial(const Pair& p);
  void interreduce();

  std::vector<Polynomial> inputs_;
  MonomialOrder order_;
  GroebnerLimits limits_;
  std::size_t n_ = 0;
  VarTablePtr vars_;

  std::vector<Node> nodes_;
  std::vector<std::size_t> live_;  // current G
  std::vector<Pair> pairs_;
  std::vector<std::size_t> basis_;
  std::size_t pairs_reduced_ = 0;
  std::map<std::size_t, std::vector<Polynomial>> expanded_;
};

}  // namespace curvelim::detail
