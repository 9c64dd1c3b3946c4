#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "chowdiag/errors.hpp"

namespace chowdiag {

// All arithmetic in this library is exact: arbitrary-precision rationals
// (GMP) or residues modulo a prime.  Nothing here may ever round.
using Int = mpz_class;
using Rational = mpq_class;

// Parses "n" or "n/d" into a canonical rational.  Throws SchemaError on
// malformed input or zero denominator.
Rational rational_from_string(const std::string& s);

// Canonical string form: "n" when the denominator is 1, else "n/d".
std::string rational_to_string(const Rational& a);

// mpq_class lacks a long long constructor; route through mpz.
inline Rational to_rational(long long v) {
    Int n;
    mpz_set_si(n.get_mpz_t(), v);
    return Rational(n);
}

// Reduces a rational to its residue in [0, p).  The denominator must be
// invertible mod p.
Rational fp_reduce(const Rational& a, unsigned long p);

class ExactMatrix;

// left * A * right = diag(diagonal), with left and right unimodular,
// diagonal entries nonnegative and each dividing the next.
struct MatrixSnf;

// Dense matrix over Q or, when a modulus is set, over F_p with entries
// stored as integers in [0, p).  A matrix never changes field: mixing
// moduli in one operation is a FieldMismatch.
class ExactMatrix {
  public:
    ExactMatrix(std::size_t rows, std::size_t cols,
                std::optional<unsigned long> modulus = std::nullopt);

    static ExactMatrix identity(std::size_t n,
                                std::optional<unsigned long> modulus = std::nullopt);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::optional<unsigned long> modulus() const { return modulus_; }

    const Rational& at(std::size_t i, std::size_t j) const;
    // Stores a value, normalizing into [0, p) when a modulus is set.
    void set(std::size_t i, std::size_t j, const Rational& v);

    bool operator==(const ExactMatrix& other) const;

    ExactMatrix transpose() const;
    ExactMatrix multiply(const ExactMatrix& other) const;

    bool is_integer() const;

    std::size_t rank() const;

    // Basis of the right kernel {v : A v = 0}; size is always
    // cols() - rank().
    std::vector<std::vector<Rational>> kernel_basis() const;

    // One solution of A x = rhs, or nullopt when inconsistent.
    std::optional<std::vector<Rational>> solve(const std::vector<Rational>& rhs) const;

    // Determinant of a square matrix.
    Rational det() const;

    // Requires integer entries and no modulus.
    MatrixSnf smith_normal_form() const;

  private:
    std::size_t rows_, cols_;
    std::optional<unsigned long> modulus_;
    std::vector<Rational> entries_;

    Rational& ref(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Rational& ref(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }

    // Field division respecting the modulus.
    Rational field_div(const Rational& a, const Rational& b) const;
    Rational field_norm(const Rational& a) const;

    struct Rref;
    // Row-reduces a copy and reports the pivot column of every pivot row.
    Rref rref() const;
};

struct MatrixSnf {
    std::vector<Int> diagonal;
    ExactMatrix left;
    ExactMatrix right;
};

}  // namespace chowdiag
