#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "chowdiag/quiverrep.hpp"

namespace chowdiag {

// Hilbert function of a finite-colength graded quotient of k[x,y]:
// a finite list of nonnegative integers with trailing zeros trimmed.
class HilbertFunction {
  public:
    explicit HilbertFunction(std::vector<long long> values);

    const std::vector<long long>& values() const { return values_; }
    long long sum() const;

    bool operator==(const HilbertFunction&) const = default;

  private:
    std::vector<long long> values_;
};

// True iff t is realized by a monomial ideal in two variables:
// t_0 = 1, t_n <= n+1, and once t_n <= n the tail is non-increasing.
bool is_admissible(const HilbertFunction& t);

// Every admissible Hilbert function with sum at most max_sum, ordered by
// length and then lexicographically.
std::vector<HilbertFunction> enumerate_admissible(long long max_sum);

// Staircase diagram of a monomial ideal in k[x,y]: column heights
// h_0 >= h_1 >= ... >= h_s > 0.  The standard monomials (a k-basis of
// the quotient) are {x^a y^b : a <= s, b < h_a}.
class Staircase {
  public:
    explicit Staircase(std::vector<long long> heights);

    const std::vector<long long>& heights() const { return heights_; }
    long long box_count() const;

    // Minimal monomial generators x^a y^b of the ideal as (a, b) pairs,
    // with a strictly increasing and b strictly decreasing to 0.
    std::vector<std::pair<long long, long long>> generators() const;

    bool operator==(const Staircase&) const = default;

  private:
    std::vector<long long> heights_;
};

// t_n = #{a <= n : n - a < h_a}.
HilbertFunction hilbert_function(const Staircase& s);

// All staircases whose Hilbert function equals t, in ascending
// lexicographic order of the height vectors.
std::vector<Staircase> enumerate_staircases(const HilbertFunction& t);

// dim Hom(I, S/I)_0, the tangent-space dimension at the monomial ideal:
// unknowns are degree-preserving images of the minimal generators in S/I,
// constrained by the syzygies linking consecutive generators.
long long tangent_dimension(const Staircase& s);

// 1 - [sum t_i^2 - 2 sum t_i t_{i+1} + sum t_i t_{i+2}].
long long gt_dimension(const HilbertFunction& t);

// One commutation relation of the quiver presentation: the composite of
// the two lhs arrows (listed tail to head) equals the composite of the
// two rhs arrows.
struct GTRelation {
    std::array<std::string, 2> lhs, rhs;

    bool operator==(const GTRelation&) const = default;
};

// Quiver-with-relations presentation of the variety attached to t:
// vertices 0..q, arrows x_i, y_i : (i-1) -> i, relations
// x_i y_{i+1} = y_i x_{i+1}, dimension vector alpha = t, and a concrete
// weight theta = (-sum_{i>=1} t_i, 1, ..., 1).
struct GTQuiverData {
    Quiver quiver;
    std::vector<GTRelation> relations;
    DimVector alpha;
    Weight theta;
};

GTQuiverData gt_quiver(const HilbertFunction& t);

}  // namespace chowdiag
