#pragma once

#include <map>
#include <string>
#include <vector>

#include "chowdiag/exactnum.hpp"

namespace chowdiag {

// Coefficient field of a representation: Q when p is unset, else F_p.
struct FieldTag {
    std::optional<unsigned long> p;
    bool operator==(const FieldTag&) const = default;
};

struct Arrow {
    std::string id;
    std::size_t tail, head;
};

// Finite quiver with string-named vertices.  Acyclicity is decided at
// construction; for acyclic quivers the full path-count table is
// precomputed, so instances are immutable and safe to share.
class Quiver {
  public:
    struct ArrowSpec {
        std::string id, tail, head;
    };
    Quiver(std::vector<std::string> vertices, std::vector<ArrowSpec> arrows);

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    std::size_t vertex_index(const std::string& id) const;
    bool acyclic() const { return acyclic_; }

    // Number of directed paths (the trivial path counts once).
    long long path_count(std::size_t from, std::size_t to) const;
    long long path_count(const std::string& from, const std::string& to) const;

    bool operator==(const Quiver& other) const;

  private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    bool acyclic_;
    std::vector<std::vector<long long>> path_counts_;  // filled when acyclic
};

using DimVector = std::vector<long long>;
using Weight = std::vector<Rational>;

// <a, b> = sum_i a_i b_i - sum_{arrows} a_tail b_head
long long euler_form(const Quiver& q, const DimVector& a, const DimVector& b);

// 1 - <a, a>; the quiver must be acyclic.
long long moduli_dimension(const Quiver& q, const DimVector& a);

class Representation {
  public:
    Representation(Quiver q, FieldTag field, DimVector dims,
                   std::map<std::string, ExactMatrix> matrices);

    const Quiver& quiver() const { return quiver_; }
    const FieldTag& field() const { return field_; }
    const DimVector& dims() const { return dims_; }
    // Matrix of the arrow with the given index in quiver().arrows().
    const ExactMatrix& matrix(std::size_t arrow_idx) const {
        return matrices_[arrow_idx];
    }

  private:
    Quiver quiver_;
    FieldTag field_;
    DimVector dims_;
    std::vector<ExactMatrix> matrices_;
};

struct HomExt {
    long long hom, ext1;
};

// Exact dimensions of Hom(e, f) and Ext^1(e, f) from the standard
// two-term complex between vertex and arrow blocks.
HomExt hom_ext(const Representation& e, const Representation& f);

// Stability of e for the weight theta (which must pair to zero with the
// dimension vector): every proper nonzero subrepresentation has strictly
// positive theta-weight.  Dispatches to the cheapest exact checker.
bool is_theta_stable(const Representation& e, const Weight& theta);

// Checker restricted to thin representations (all fiber dimensions <= 1):
// subrepresentations are arrow-closed vertex subsets.
bool theta_stable_subsets(const Representation& e, const Weight& theta);

// Checker for finite coefficient fields: enumerates every tuple of
// subspaces.  Refuses oversized instances.
bool theta_stable_bruteforce(const Representation& e, const Weight& theta);

// Dimension vector of the smallest subrepresentation containing the given
// seed vectors (keyed by vertex id, each vector of length dims[vertex]).
DimVector generated_subrep(const Representation& e,
                           const std::map<std::string, std::vector<std::vector<Rational>>>& seeds);

// Entry-wise reduction of a rational representation modulo p.
Representation reduce_mod_p(const Representation& e, unsigned long p);

}  // namespace chowdiag
