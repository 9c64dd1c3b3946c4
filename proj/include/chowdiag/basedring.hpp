#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "chowdiag/errors.hpp"
#include "chowdiag/exactnum.hpp"

namespace chowdiag {

// Sparse integer combination of basis elements, sorted by index,
// all coefficients nonzero.
using Combo = std::vector<std::pair<std::size_t, long long>>;

// Graded commutative ring with a finite free integral basis, given by
// explicit structure constants.  Products of basis elements whose degrees
// add up beyond the top degree are zero.  Construction validates degree
// additivity, the unit law, commutativity, and associativity on every
// basis triple.
class BasedRing {
  public:
    BasedRing(std::string label, std::vector<std::string> names,
              std::vector<int> degrees, std::vector<std::vector<Combo>> products,
              std::size_t unit_index, Combo degree_functional);

    const std::string& label() const { return label_; }
    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    int degree(std::size_t i) const { return degrees_.at(i); }
    int top_degree() const { return top_; }
    std::size_t unit_index() const { return unit_; }
    std::size_t find_basis(const std::string& name) const;
    const Combo& product_combo(std::size_t i, std::size_t j) const;
    const Combo& functional_combo() const { return functional_; }

  private:
    std::string label_;
    std::vector<std::string> names_;
    std::vector<int> degrees_;
    std::vector<std::vector<Combo>> products_;
    std::size_t unit_ = 0;
    Combo functional_;
    int top_ = 0;
};

using RingPtr = std::shared_ptr<const BasedRing>;

// Element of a BasedRing with rational coefficients.  Immutable; all
// arithmetic requires both operands to live in the same ring instance.
class RingElement {
  public:
    RingElement(RingPtr ring, std::map<std::size_t, Rational> coeffs);

    const RingPtr& ring() const { return ring_; }
    const std::map<std::size_t, Rational>& coeffs() const { return coeffs_; }
    Rational coefficient(std::size_t i) const;
    Rational coefficient(const std::string& name) const;
    bool is_zero() const { return coeffs_.empty(); }
    bool is_integral() const;
    RingElement degree_component(int d) const;
    std::string to_string() const;

    friend RingElement operator+(const RingElement& a, const RingElement& b);
    friend RingElement operator-(const RingElement& a, const RingElement& b);
    friend RingElement operator-(const RingElement& a);
    friend RingElement operator*(const RingElement& a, const RingElement& b);
    friend RingElement operator*(const Rational& s, const RingElement& a);
    friend bool operator==(const RingElement& a, const RingElement& b);
    friend bool operator!=(const RingElement& a, const RingElement& b);

  private:
    RingPtr ring_;
    std::map<std::size_t, Rational> coeffs_;
};

RingElement ring_zero(RingPtr r);
RingElement ring_unit(RingPtr r);
RingElement basis_element(RingPtr r, std::size_t i);
RingElement basis_element(RingPtr r, const std::string& name);

// Value of the ring's degree functional (zero off the top degree).
Rational degree_functional(const RingElement& x);

// Z[h]/(h^{n+1}) with basis 1, h, ..., h^n.
RingPtr projective_space(int n);

// Schubert basis of Gr(k, n): partitions inside the k x (n-k) box,
// multiplied by the Littlewood-Richardson rule.  Boxes beyond 4 x 4 are
// out of scope.
RingPtr grassmannian(int k, int n);

// Product of two based rings together with its pullback embeddings.
// Basis elements are pairs, named "<left>*<right>", indexed row-major
// with the left factor outermost.
struct ProductRing {
    RingPtr ring;
    RingPtr left;
    RingPtr right;

    std::size_t index_of(std::size_t i, std::size_t j) const;
    RingElement p1(const RingElement& x) const;
    RingElement p2(const RingElement& x) const;
    // exchange the two factors; requires left and right to be the same ring
    RingElement swap_factors(const RingElement& x) const;
};

ProductRing product(RingPtr a, RingPtr b);

// Matrix of the intersection pairing between the degree-i basis and the
// complementary-degree basis, both in ring order.  Entries are integers.
ExactMatrix pairing_matrix(const RingPtr& r, int deg);

// Basis dual to the ring basis under the intersection pairing, indexed
// like the basis itself.  Throws NotUnimodular if some pairing matrix is
// not invertible over the integers.
std::vector<RingElement> dual_basis(const RingPtr& r);

// Sum of p1*(b) . p2*(b dual) over the basis of the (square) factor: the
// class of the diagonal predicted by the Kunneth decomposition.
RingElement kunneth_diagonal(const ProductRing& square);

}  // namespace chowdiag
