#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "isolab/errors.hpp"

namespace isolab {

using FlVector = std::vector<std::uint32_t>;

// Dense matrix over F_ell, entries in [0, ell).
class FlMatrix {
public:
    FlMatrix() = default;
    FlMatrix(unsigned ell, size_t rows, size_t cols);
    static FlMatrix identity(unsigned ell, size_t n);
    static FlMatrix from_rows(unsigned ell, const std::vector<std::vector<long>>& rows);
    static FlMatrix from_vectors(unsigned ell, const std::vector<FlVector>& rows, size_t cols);
    static FlMatrix diagonal(unsigned ell, const std::vector<long>& entries);
    // diag(a, b)
    static FlMatrix block_diagonal(const FlMatrix& a, const FlMatrix& b);

    unsigned ell() const { return ell_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    std::uint32_t operator()(size_t r, size_t c) const { return d_[r * cols_ + c]; }
    void set(size_t r, size_t c, long v);
    FlVector row(size_t r) const;
    FlVector column(size_t c) const;
    std::vector<std::vector<long>> to_rows() const;

    FlMatrix transpose() const;
    FlMatrix operator*(const FlMatrix& o) const;
    FlVector operator*(const FlVector& v) const;
    FlMatrix operator+(const FlMatrix& o) const;
    FlMatrix operator-(const FlMatrix& o) const;
    FlMatrix scaled(long s) const;
    FlMatrix pow(std::uint64_t e) const;

    size_t rank() const;
    long determinant() const;
    long trace() const;
    bool invertible() const { return square() && determinant() != 0; }
    std::optional<FlMatrix> inverse() const;
    // Basis of {v : M v = 0}, canonical (reduced echelon rows).
    std::vector<FlVector> kernel() const;
    // Reduced row echelon form; pivot columns returned through `pivots`.
    FlMatrix rref(std::vector<size_t>* pivots = nullptr) const;
    // Coefficients of the minimal polynomial, low to high, monic.
    std::vector<long> minimal_polynomial() const;

    bool is_identity() const;
    friend bool operator==(const FlMatrix& a, const FlMatrix& b) = default;
    friend auto operator<=>(const FlMatrix& a, const FlMatrix& b) = default;
    std::string to_string() const;

private:
    void check_compatible(const FlMatrix& o, const char* op) const;

    unsigned ell_ = 2;
    size_t rows_ = 0, cols_ = 0;
    std::vector<std::uint32_t> d_;
};

struct FlMatrixHash {
    size_t operator()(const FlMatrix& m) const;
};

long mod_ell(long v, unsigned ell);
long inv_mod_ell(long v, unsigned ell);

// Subspace of F_ell^n stored by its reduced row echelon basis, so equality of
// subspaces is equality of representations.
class Subspace {
public:
    Subspace() = default;
    static Subspace zero(unsigned ell, size_t n);
    static Subspace full(unsigned ell, size_t n);
    static Subspace span(unsigned ell, size_t n, const std::vector<FlVector>& vectors);
    // Kernel of the given functionals (row vectors).
    static Subspace annihilated_by(unsigned ell, size_t n, const std::vector<FlVector>& functionals);

    unsigned ell() const { return ell_; }
    size_t ambient() const { return n_; }
    size_t dim() const { return basis_.size(); }
    const std::vector<FlVector>& basis() const { return basis_; }
    const std::vector<size_t>& pivots() const { return pivots_; }

    bool contains(const FlVector& v) const;
    bool contains(const Subspace& o) const;
    Subspace operator+(const Subspace& o) const;
    Subspace intersect(const Subspace& o) const;
    // Functionals vanishing on the subspace (basis of the annihilator).
    std::vector<FlVector> annihilator() const;
    // Image under a square matrix acting on column vectors.
    Subspace image(const FlMatrix& m) const;
    // Coordinate complement spanned by standard vectors at non-pivot columns.
    Subspace echelon_complement() const;
    // Coordinates of v in the echelon basis; v must lie in the subspace.
    FlVector coordinates(const FlVector& v) const;

    friend bool operator==(const Subspace& a, const Subspace& b) = default;
    friend auto operator<=>(const Subspace& a, const Subspace& b) = default;
    std::string to_string() const;

private:
    void check_compatible(const Subspace& o) const;

    unsigned ell_ = 2;
    size_t n_ = 0;
    std::vector<FlVector> basis_;
    std::vector<size_t> pivots_;
};

// All vectors of F_ell^n in lexicographic order (index -> digits); callers cap n.
FlVector vector_at(unsigned ell, size_t n, std::uint64_t index);
std::uint64_t vector_count(unsigned ell, size_t n);

}  // namespace isolab
