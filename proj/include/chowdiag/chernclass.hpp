#pragma once

#include "chowdiag/basedring.hpp"

namespace chowdiag {

// K-theoretic bundle datum over a BasedRing: an integer rank (negative for
// virtual classes) and a total Chern class with unit degree-0 part.  No
// presentation is remembered.
class BundleClass {
  public:
    BundleClass(long long rank, RingElement total_chern);

    const RingPtr& ring() const { return total_chern_.ring(); }
    long long rank() const { return rank_; }
    const RingElement& total_chern() const { return total_chern_; }

    friend bool operator==(const BundleClass& a, const BundleClass& b);
    friend bool operator!=(const BundleClass& a, const BundleClass& b);

  private:
    long long rank_;
    RingElement total_chern_;
};

BundleClass trivial_bundle(RingPtr r, long long rank);

// rank-1 bundle with first Chern class c1 (homogeneous of degree 1)
BundleClass line_bundle(const RingElement& c1);

BundleClass whitney_sum(const BundleClass& a, const BundleClass& b);

// Whitney sum of `copies` copies of a
BundleClass direct_sum(const BundleClass& a, long long copies);

BundleClass dual(const BundleClass& a);

// rank + sum of power sums / k!, power sums from the Chern components by
// Newton's identities, truncated at the ring's top degree
RingElement chern_character(const BundleClass& a);

// inverse of chern_character; the recovered Chern class must be integral
BundleClass from_character(const RingElement& ch, long long rank);

// dual(e) tensor f, computed through the character ring
BundleClass hom_bundle(const BundleClass& e, const BundleClass& f);

// a - b in K-theory: ranks subtract, total Chern classes divide (the
// inverse is the truncated geometric series of the unit-leading class)
BundleClass virtual_difference(const BundleClass& a, const BundleClass& b);

// degree-m component of the total Chern class; must be integral
RingElement top_class(const BundleClass& v, int m);

// a tensor the line bundle with first Chern class c1
BundleClass tensor_line(const BundleClass& a, const RingElement& c1);

}  // namespace chowdiag
