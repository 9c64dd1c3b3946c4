#include "chowdiag/exactnum.hpp"

#include <algorithm>
#include <cctype>

namespace chowdiag {

Rational rational_from_string(const std::string& s) {
    // strict form: -?digits(/digits)?
    std::size_t i = 0;
    auto digits = [&](std::size_t& pos) {
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) pos++;
        return pos > start;
    };
    if (i < s.size() && s[i] == '-') i++;
    if (!digits(i)) throw SchemaError("not a rational: '" + s + "'");
    if (i < s.size()) {
        if (s[i] != '/') throw SchemaError("not a rational: '" + s + "'");
        i++;
        std::size_t den_start = i;
        if (!digits(i) || i != s.size())
            throw SchemaError("not a rational: '" + s + "'");
        if (std::all_of(s.begin() + den_start, s.end(), [](char c) { return c == '0'; }))
            throw SchemaError("zero denominator: '" + s + "'");
    }
    Rational r(s);
    r.canonicalize();
    return r;
}

std::string rational_to_string(const Rational& a) {
    if (a.get_den() == 1) return a.get_num().get_str();
    return a.get_num().get_str() + "/" + a.get_den().get_str();
}

Rational fp_reduce(const Rational& a, unsigned long p) {
    Rational canon(a);
    canon.canonicalize();
    Int mod(p);
    Int den = canon.get_den();
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw FieldMismatch("denominator " + den.get_str() + " not invertible mod " +
                            mod.get_str());
    Int num = canon.get_num() * inv;
    Int res;
    mpz_mod(res.get_mpz_t(), num.get_mpz_t(), mod.get_mpz_t());
    return Rational(res);
}

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols,
                         std::optional<unsigned long> modulus)
    : rows_(rows), cols_(cols), modulus_(modulus), entries_(rows * cols, Rational(0)) {
    if (modulus_) {
        Int p(*modulus_);
        if (*modulus_ < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
            throw InvalidArgument("modulus " + p.get_str() + " is not prime");
    }
}

ExactMatrix ExactMatrix::identity(std::size_t n, std::optional<unsigned long> modulus) {
    ExactMatrix m(n, n, modulus);
    for (std::size_t i = 0; i < n; i++) m.ref(i, i) = 1;
    return m;
}

const Rational& ExactMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw InvalidArgument("matrix index out of range");
    return ref(i, j);
}

void ExactMatrix::set(std::size_t i, std::size_t j, const Rational& v) {
    if (i >= rows_ || j >= cols_) throw InvalidArgument("matrix index out of range");
    ref(i, j) = field_norm(v);
}

Rational ExactMatrix::field_norm(const Rational& a) const {
    if (modulus_) return fp_reduce(a, *modulus_);
    Rational canon(a);
    canon.canonicalize();
    return canon;
}

Rational ExactMatrix::field_div(const Rational& a, const Rational& b) const {
    if (b == 0) throw InvalidArgument("division by zero");
    if (!modulus_) return a / b;
    return fp_reduce(a / b, *modulus_);
}

bool ExactMatrix::operator==(const ExactMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && modulus_ == other.modulus_ &&
           entries_ == other.entries_;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(cols_, rows_, modulus_);
    for (std::size_t i = 0; i < rows_; i++)
        for (std::size_t j = 0; j < cols_; j++) t.ref(j, i) = ref(i, j);
    return t;
}

ExactMatrix ExactMatrix::multiply(const ExactMatrix& other) const {
    if (modulus_ != other.modulus_)
        throw FieldMismatch("matrix product across different coefficient fields");
    if (cols_ != other.rows_) throw InvalidArgument("matrix product shape mismatch");
    ExactMatrix out(rows_, other.cols_, modulus_);
    for (std::size_t i = 0; i < rows_; i++)
        for (std::size_t k = 0; k < cols_; k++) {
            const Rational& a = ref(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < other.cols_; j++) {
                if (other.ref(k, j) == 0) continue;
                out.ref(i, j) += a * other.ref(k, j);
            }
        }
    if (modulus_)
        for (auto& e : out.entries_) e = out.field_norm(e);
    return out;
}

bool ExactMatrix::is_integer() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Rational& e) { return e.get_den() == 1; });
}

struct ExactMatrix::Rref {
    ExactMatrix mat;
    std::vector<std::size_t> pivot_cols;
};

ExactMatrix::Rref ExactMatrix::rref() const {
    Rref out{*this, {}};
    ExactMatrix& m = out.mat;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; col++) {
        std::size_t pivot = row;
        while (pivot < rows_ && m.ref(pivot, col) == 0) pivot++;
        if (pivot == rows_) continue;
        if (pivot != row)
            for (std::size_t j = 0; j < cols_; j++)
                std::swap(m.ref(pivot, j), m.ref(row, j));
        Rational lead = m.ref(row, col);
        for (std::size_t j = col; j < cols_; j++)
            m.ref(row, j) = field_div(m.ref(row, j), lead);
        for (std::size_t r = 0; r < rows_; r++) {
            if (r == row || m.ref(r, col) == 0) continue;
            Rational factor = m.ref(r, col);
            for (std::size_t j = col; j < cols_; j++)
                m.ref(r, j) = m.field_norm(m.ref(r, j) - factor * m.ref(row, j));
        }
        out.pivot_cols.push_back(col);
        row++;
    }
    return out;
}

std::size_t ExactMatrix::rank() const { return rref().pivot_cols.size(); }

std::vector<std::vector<Rational>> ExactMatrix::kernel_basis() const {
    Rref r = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : r.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < cols_; f++) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(cols_, Rational(0));
        v[f] = 1;
        for (std::size_t prow = 0; prow < r.pivot_cols.size(); prow++)
            v[r.pivot_cols[prow]] = field_norm(-r.mat.ref(prow, f));
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rational>> ExactMatrix::solve(
    const std::vector<Rational>& rhs) const {
    if (rhs.size() != rows_) throw InvalidArgument("solve: rhs length mismatch");
    ExactMatrix aug(rows_, cols_ + 1, modulus_);
    for (std::size_t i = 0; i < rows_; i++) {
        for (std::size_t j = 0; j < cols_; j++) aug.ref(i, j) = ref(i, j);
        aug.set(i, cols_, rhs[i]);
    }
    Rref r = aug.rref();
    std::vector<Rational> x(cols_, Rational(0));
    for (std::size_t prow = 0; prow < r.pivot_cols.size(); prow++) {
        if (r.pivot_cols[prow] == cols_) return std::nullopt;  // 0 = 1 row
        x[r.pivot_cols[prow]] = r.mat.ref(prow, cols_);
    }
    return x;
}

Rational ExactMatrix::det() const {
    if (rows_ != cols_) throw InvalidArgument("determinant of non-square matrix");
    ExactMatrix m(*this);
    Rational d(1);
    for (std::size_t col = 0; col < cols_; col++) {
        std::size_t pivot = col;
        while (pivot < rows_ && m.ref(pivot, col) == 0) pivot++;
        if (pivot == rows_) return Rational(0);
        if (pivot != col) {
            for (std::size_t j = 0; j < cols_; j++)
                std::swap(m.ref(pivot, j), m.ref(col, j));
            d = -d;
        }
        d *= m.ref(col, col);
        for (std::size_t r = col + 1; r < rows_; r++) {
            if (m.ref(r, col) == 0) continue;
            Rational factor = field_div(m.ref(r, col), m.ref(col, col));
            for (std::size_t j = col; j < cols_; j++)
                m.ref(r, j) = field_norm(m.ref(r, j) - factor * m.ref(col, j));
        }
    }
    return field_norm(d);
}

namespace {

// Dense integer workspace for the Smith reduction.
struct ZMat {
    std::size_t rows, cols;
    std::vector<Int> e;
    ZMat(std::size_t r, std::size_t c) : rows(r), cols(c), e(r * c, Int(0)) {}
    Int& at(std::size_t i, std::size_t j) { return e[i * cols + j]; }
    static ZMat identity(std::size_t n) {
        ZMat m(n, n);
        for (std::size_t i = 0; i < n; i++) m.at(i, i) = 1;
        return m;
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols; j++) std::swap(at(a, j), at(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows; i++) std::swap(at(i, a), at(i, b));
    }
    // row a -= q * row b
    void row_sub(std::size_t a, std::size_t b, const Int& q) {
        for (std::size_t j = 0; j < cols; j++) at(a, j) -= q * at(b, j);
    }
    void col_sub(std::size_t a, std::size_t b, const Int& q) {
        for (std::size_t i = 0; i < rows; i++) at(i, a) -= q * at(i, b);
    }
    void row_add(std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols; j++) at(a, j) += at(b, j);
    }
    void negate_row(std::size_t a) {
        for (std::size_t j = 0; j < cols; j++) at(a, j) = -at(a, j);
    }
};

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

MatrixSnf ExactMatrix::smith_normal_form() const {
    if (modulus_) throw InvalidArgument("Smith form is defined over the integers");
    if (!is_integer()) throw InvalidArgument("Smith form needs integer entries");

    ZMat a(rows_, cols_);
    for (std::size_t i = 0; i < rows_; i++)
        for (std::size_t j = 0; j < cols_; j++) a.at(i, j) = ref(i, j).get_num();
    ZMat u = ZMat::identity(rows_);
    ZMat v = ZMat::identity(cols_);

    std::size_t n = std::min(rows_, cols_);
    for (std::size_t t = 0; t < n; t++) {
        for (;;) {
            // smallest nonzero entry of the trailing block becomes the pivot
            bool found = false;
            std::size_t pi = t, pj = t;
            for (std::size_t i = t; i < rows_; i++)
                for (std::size_t j = t; j < cols_; j++) {
                    if (a.at(i, j) == 0) continue;
                    if (!found || mpz_cmpabs(a.at(i, j).get_mpz_t(),
                                             a.at(pi, pj).get_mpz_t()) < 0) {
                        found = true;
                        pi = i;
                        pj = j;
                    }
                }
            if (!found) goto done;  // trailing block is zero
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            bool dirty = false;
            for (std::size_t i = t + 1; i < rows_; i++) {
                if (a.at(i, t) == 0) continue;
                Int q = floor_div(a.at(i, t), a.at(t, t));
                a.row_sub(i, t, q);
                u.row_sub(i, t, q);
                if (a.at(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < cols_; j++) {
                if (a.at(t, j) == 0) continue;
                Int q = floor_div(a.at(t, j), a.at(t, t));
                a.col_sub(j, t, q);
                v.col_sub(j, t, q);
                if (a.at(t, j) != 0) dirty = true;
            }
            if (dirty) continue;  // smaller residues appeared; re-select pivot

            // pivot must divide the whole trailing block
            bool fixed = false;
            for (std::size_t i = t + 1; i < rows_ && !fixed; i++)
                for (std::size_t j = t + 1; j < cols_ && !fixed; j++) {
                    if (a.at(i, j) % a.at(t, t) != 0) {
                        a.row_add(t, i);
                        u.row_add(t, i);
                        fixed = true;
                    }
                }
            if (!fixed) break;
        }
        if (a.at(t, t) < 0) {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
done:

    MatrixSnf out{std::vector<Int>(n), ExactMatrix(rows_, rows_), ExactMatrix(cols_, cols_)};
    for (std::size_t t = 0; t < n; t++) out.diagonal[t] = a.at(t, t);
    for (std::size_t i = 0; i < rows_; i++)
        for (std::size_t j = 0; j < rows_; j++) out.left.ref(i, j) = Rational(u.at(i, j));
    for (std::size_t i = 0; i < cols_; i++)
        for (std::size_t j = 0; j < cols_; j++) out.right.ref(i, j) = Rational(v.at(i, j));
    return out;
}

}  // namespace chowdiag
