#include "isolab/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "isolab/field.hpp"

namespace isolab {

long mod_ell(long v, unsigned ell) {
    long r = v % static_cast<long>(ell);
    return r < 0 ? r + ell : r;
}

long inv_mod_ell(long v, unsigned ell) {
    v = mod_ell(v, ell);
    if (v == 0) throw ArithmeticError("inverse of zero mod " + std::to_string(ell));
    return static_cast<long>(modp::inv(static_cast<u64>(v), ell));
}

FlMatrix::FlMatrix(unsigned ell, size_t rows, size_t cols) : ell_(ell), rows_(rows), cols_(cols), d_(rows * cols, 0) {
    if (!is_prime(ell)) throw DomainError("matrix modulus " + std::to_string(ell) + " is not prime");
}

FlMatrix FlMatrix::identity(unsigned ell, size_t n) {
    FlMatrix m(ell, n, n);
    for (size_t i = 0; i < n; ++i) m.d_[i * n + i] = 1;
    return m;
}

FlMatrix FlMatrix::from_rows(unsigned ell, const std::vector<std::vector<long>>& rows) {
    const size_t cols = rows.empty() ? 0 : rows.front().size();
    FlMatrix m(ell, rows.size(), cols);
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw StructuralError("ragged matrix rows");
        for (size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
}

FlMatrix FlMatrix::from_vectors(unsigned ell, const std::vector<FlVector>& rows, size_t cols) {
    FlMatrix m(ell, rows.size(), cols);
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw StructuralError("vector length does not match column count");
        for (size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
}

FlMatrix FlMatrix::diagonal(unsigned ell, const std::vector<long>& entries) {
    FlMatrix m(ell, entries.size(), entries.size());
    for (size_t i = 0; i < entries.size(); ++i) m.set(i, i, entries[i]);
    return m;
}

FlMatrix FlMatrix::block_diagonal(const FlMatrix& a, const FlMatrix& b) {
    if (a.ell_ != b.ell_) throw StructuralError("block_diagonal over different fields");
    FlMatrix m(a.ell_, a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (size_t r = 0; r < a.rows_; ++r)
        for (size_t c = 0; c < a.cols_; ++c) m.d_[r * m.cols_ + c] = a(r, c);
    for (size_t r = 0; r < b.rows_; ++r)
        for (size_t c = 0; c < b.cols_; ++c) m.d_[(r + a.rows_) * m.cols_ + c + a.cols_] = b(r, c);
    return m;
}

void FlMatrix::set(size_t r, size_t c, long v) {
    if (r >= rows_ || c >= cols_) throw StructuralError("matrix index out of range");
    d_[r * cols_ + c] = static_cast<std::uint32_t>(mod_ell(v, ell_));
}

FlVector FlMatrix::row(size_t r) const { return FlVector(d_.begin() + r * cols_, d_.begin() + (r + 1) * cols_); }

FlVector FlMatrix::column(size_t c) const {
    FlVector v(rows_);
    for (size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

std::vector<std::vector<long>> FlMatrix::to_rows() const {
    std::vector<std::vector<long>> out(rows_, std::vector<long>(cols_));
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c) out[r][c] = (*this)(r, c);
    return out;
}

void FlMatrix::check_compatible(const FlMatrix& o, const char* op) const {
    if (ell_ != o.ell_) throw StructuralError(std::string(op) + ": matrices over different fields");
}

FlMatrix FlMatrix::transpose() const {
    FlMatrix t(ell_, cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c) t.d_[c * rows_ + r] = (*this)(r, c);
    return t;
}

FlMatrix FlMatrix::operator*(const FlMatrix& o) const {
    check_compatible(o, "multiply");
    if (cols_ != o.rows_) throw StructuralError("matrix product dimension mismatch");
    FlMatrix m(ell_, rows_, o.cols_);
    for (size_t r = 0; r < rows_; ++r) {
        for (size_t c = 0; c < o.cols_; ++c) {
            std::uint64_t acc = 0;
            for (size_t k = 0; k < cols_; ++k) acc += static_cast<std::uint64_t>((*this)(r, k)) * o(k, c);
            m.d_[r * o.cols_ + c] = static_cast<std::uint32_t>(acc % ell_);
        }
    }
    return m;
}

FlVector FlMatrix::operator*(const FlVector& v) const {
    if (v.size() != cols_) throw StructuralError("matrix-vector dimension mismatch");
    FlVector out(rows_);
    for (size_t r = 0; r < rows_; ++r) {
        std::uint64_t acc = 0;
        for (size_t k = 0; k < cols_; ++k) acc += static_cast<std::uint64_t>((*this)(r, k)) * v[k];
        out[r] = static_cast<std::uint32_t>(acc % ell_);
    }
    return out;
}

FlMatrix FlMatrix::operator+(const FlMatrix& o) const {
    check_compatible(o, "add");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw StructuralError("matrix sum dimension mismatch");
    FlMatrix m = *this;
    for (size_t i = 0; i < d_.size(); ++i) m.d_[i] = (d_[i] + o.d_[i]) % ell_;
    return m;
}

FlMatrix FlMatrix::operator-(const FlMatrix& o) const {
    check_compatible(o, "subtract");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw StructuralError("matrix difference dimension mismatch");
    FlMatrix m = *this;
    for (size_t i = 0; i < d_.size(); ++i) m.d_[i] = (d_[i] + ell_ - o.d_[i]) % ell_;
    return m;
}

FlMatrix FlMatrix::scaled(long s) const {
    FlMatrix m = *this;
    const auto f = static_cast<std::uint64_t>(mod_ell(s, ell_));
    for (auto& v : m.d_) v = static_cast<std::uint32_t>(v * f % ell_);
    return m;
}

FlMatrix FlMatrix::pow(std::uint64_t e) const {
    if (!square()) throw StructuralError("power of a non-square matrix");
    FlMatrix r = identity(ell_, rows_), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

FlMatrix FlMatrix::rref(std::vector<size_t>* pivots) const {
    FlMatrix m = *this;
    std::vector<size_t> piv;
    size_t lead_row = 0;
    for (size_t c = 0; c < cols_ && lead_row < rows_; ++c) {
        size_t sel = lead_row;
        while (sel < rows_ && m(sel, c) == 0) ++sel;
        if (sel == rows_) continue;
        if (sel != lead_row)
            for (size_t k = 0; k < cols_; ++k) std::swap(m.d_[sel * cols_ + k], m.d_[lead_row * cols_ + k]);
        const auto inv = static_cast<std::uint64_t>(inv_mod_ell(m(lead_row, c), ell_));
        for (size_t k = 0; k < cols_; ++k)
            m.d_[lead_row * cols_ + k] = static_cast<std::uint32_t>(m.d_[lead_row * cols_ + k] * inv % ell_);
        for (size_t r = 0; r < rows_; ++r) {
            if (r == lead_row || m(r, c) == 0) continue;
            const std::uint64_t f = m(r, c);
            for (size_t k = 0; k < cols_; ++k) {
                const std::uint64_t sub = f * m.d_[lead_row * cols_ + k] % ell_;
                m.d_[r * cols_ + k] = static_cast<std::uint32_t>((m.d_[r * cols_ + k] + ell_ - sub) % ell_);
            }
        }
        piv.push_back(c);
        ++lead_row;
    }
    if (pivots) *pivots = std::move(piv);
    return m;
}

size_t FlMatrix::rank() const {
    std::vector<size_t> piv;
    rref(&piv);
    return piv.size();
}

long FlMatrix::determinant() const {
    if (!square()) throw StructuralError("determinant of a non-square matrix");
    FlMatrix m = *this;
    long det = 1;
    const size_t n = rows_;
    for (size_t c = 0; c < n; ++c) {
        size_t sel = c;
        while (sel < n && m(sel, c) == 0) ++sel;
        if (sel == n) return 0;
        if (sel != c) {
            for (size_t k = 0; k < n; ++k) std::swap(m.d_[sel * n + k], m.d_[c * n + k]);
            det = mod_ell(-det, ell_);
        }
        det = mod_ell(det * m(c, c), ell_);
        const auto inv = static_cast<std::uint64_t>(inv_mod_ell(m(c, c), ell_));
        for (size_t r = c + 1; r < n; ++r) {
            if (m(r, c) == 0) continue;
            const std::uint64_t f = m(r, c) * inv % ell_;
            for (size_t k = c; k < n; ++k) {
                const std::uint64_t sub = f * m.d_[c * n + k] % ell_;
                m.d_[r * n + k] = static_cast<std::uint32_t>((m.d_[r * n + k] + ell_ - sub) % ell_);
            }
        }
    }
    return det;
}

long FlMatrix::trace() const {
    if (!square()) throw StructuralError("trace of a non-square matrix");
    long t = 0;
    for (size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return mod_ell(t, ell_);
}

std::optional<FlMatrix> FlMatrix::inverse() const {
    if (!square()) throw StructuralError("inverse of a non-square matrix");
    const size_t n = rows_;
    FlMatrix aug(ell_, n, 2 * n);
    for (size_t r = 0; r < n; ++r) {
        for (size_t c = 0; c < n; ++c) aug.d_[r * 2 * n + c] = (*this)(r, c);
        aug.d_[r * 2 * n + n + r] = 1;
    }
    std::vector<size_t> piv;
    FlMatrix red = aug.rref(&piv);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    FlMatrix inv(ell_, n, n);
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) inv.d_[r * n + c] = red(r, n + c);
    return inv;
}

std::vector<FlVector> FlMatrix::kernel() const {
    std::vector<size_t> piv;
    FlMatrix red = rref(&piv);
    std::vector<bool> is_pivot(cols_, false);
    for (size_t c : piv) is_pivot[c] = true;
    std::vector<FlVector> basis;
    for (size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        FlVector v(cols_, 0);
        v[f] = 1;
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = static_cast<std::uint32_t>(mod_ell(-static_cast<long>(red(i, f)), ell_));
        basis.push_back(std::move(v));
    }
    return Subspace::span(ell_, cols_, basis).basis();
}

std::vector<long> FlMatrix::minimal_polynomial() const {
    if (!square()) throw StructuralError("minimal polynomial of a non-square matrix");
    const size_t n = rows_;
    // Powers of M flattened; find the first linear dependency.
    std::vector<FlVector> flat;
    FlMatrix power = identity(ell_, n);
    for (size_t d = 0; d <= n; ++d) {
        flat.emplace_back(power.d_.begin(), power.d_.end());
        // columns = powers, solve sum c_i M^i = 0 with c_d = 1
        FlMatrix sys(ell_, n * n, flat.size());
        for (size_t j = 0; j < flat.size(); ++j)
            for (size_t i = 0; i < n * n; ++i) sys.d_[i * flat.size() + j] = flat[j][i];
        auto ker = sys.kernel();
        if (!ker.empty()) {
            // the kernel is one-dimensional at the first dependency
            FlVector k = ker.front();
            const long lead = k.back();
            if (lead == 0) throw InternalError("minimal polynomial: dependency without top power");
            const long inv = inv_mod_ell(lead, ell_);
            std::vector<long> out;
            for (auto v : k) out.push_back(mod_ell(static_cast<long>(v) * inv, ell_));
            return out;
        }
        power = power * *this;
    }
    throw InternalError("minimal polynomial degree exceeds dimension");
}

bool FlMatrix::is_identity() const { return square() && *this == identity(ell_, rows_); }

std::string FlMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (size_t r = 0; r < rows_; ++r) {
        os << (r ? ",[" : "[");
        for (size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << (*this)(r, c);
        os << ']';
    }
    os << ']';
    return os.str();
}

size_t FlMatrixHash::operator()(const FlMatrix& m) const {
    size_t h = std::hash<size_t>()(m.rows() * 131 + m.cols());
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c) h = h * 1000003u ^ m(r, c);
    return h;
}

// ---------------------------------------------------------------------------

Subspace Subspace::zero(unsigned ell, size_t n) {
    Subspace s;
    s.ell_ = ell;
    s.n_ = n;
    return s;
}

Subspace Subspace::full(unsigned ell, size_t n) {
    std::vector<FlVector> e;
    for (size_t i = 0; i < n; ++i) {
        FlVector v(n, 0);
        v[i] = 1;
        e.push_back(std::move(v));
    }
    return span(ell, n, e);
}

Subspace Subspace::span(unsigned ell, size_t n, const std::vector<FlVector>& vectors) {
    Subspace s = zero(ell, n);
    if (vectors.empty()) return s;
    FlMatrix m = FlMatrix::from_vectors(ell, vectors, n);
    std::vector<size_t> piv;
    FlMatrix red = m.rref(&piv);
    for (size_t i = 0; i < piv.size(); ++i) s.basis_.push_back(red.row(i));
    s.pivots_ = std::move(piv);
    return s;
}

Subspace Subspace::annihilated_by(unsigned ell, size_t n, const std::vector<FlVector>& functionals) {
    if (functionals.empty()) return full(ell, n);
    return span(ell, n, FlMatrix::from_vectors(ell, functionals, n).kernel());
}

void Subspace::check_compatible(const Subspace& o) const {
    if (ell_ != o.ell_ || n_ != o.n_) throw StructuralError("subspaces of different ambient spaces");
}

bool Subspace::contains(const FlVector& v) const {
    if (v.size() != n_) throw StructuralError("vector length does not match ambient dimension");
    FlVector r = v;
    for (size_t i = 0; i < basis_.size(); ++i) {
        const std::uint64_t c = r[pivots_[i]];
        if (c == 0) continue;
        for (size_t k = 0; k < n_; ++k) r[k] = static_cast<std::uint32_t>((r[k] + ell_ - c * basis_[i][k] % ell_) % ell_);
    }
    return std::all_of(r.begin(), r.end(), [](auto x) { return x == 0; });
}

bool Subspace::contains(const Subspace& o) const {
    check_compatible(o);
    return std::all_of(o.basis_.begin(), o.basis_.end(), [this](const FlVector& v) { return contains(v); });
}

Subspace Subspace::operator+(const Subspace& o) const {
    check_compatible(o);
    std::vector<FlVector> all = basis_;
    all.insert(all.end(), o.basis_.begin(), o.basis_.end());
    return span(ell_, n_, all);
}

std::vector<FlVector> Subspace::annihilator() const {
    if (basis_.empty()) return full(ell_, n_).basis();
    return FlMatrix::from_vectors(ell_, basis_, n_).kernel();
}

Subspace Subspace::intersect(const Subspace& o) const {
    check_compatible(o);
    auto f = annihilator();
    auto g = o.annihilator();
    f.insert(f.end(), g.begin(), g.end());
    return annihilated_by(ell_, n_, f);
}

Subspace Subspace::image(const FlMatrix& m) const {
    if (m.rows() != n_ || m.cols() != n_ || m.ell() != ell_) throw StructuralError("matrix does not act on this ambient space");
    std::vector<FlVector> imgs;
    for (const auto& v : basis_) imgs.push_back(m * v);
    return span(ell_, n_, imgs);
}

Subspace Subspace::echelon_complement() const {
    std::vector<bool> is_pivot(n_, false);
    for (size_t c : pivots_) is_pivot[c] = true;
    std::vector<FlVector> e;
    for (size_t i = 0; i < n_; ++i) {
        if (is_pivot[i]) continue;
        FlVector v(n_, 0);
        v[i] = 1;
        e.push_back(std::move(v));
    }
    return span(ell_, n_, e);
}

FlVector Subspace::coordinates(const FlVector& v) const {
    if (!contains(v)) throw DomainError("vector is not in the subspace");
    FlVector c(basis_.size());
    for (size_t i = 0; i < basis_.size(); ++i) c[i] = v[pivots_[i]];
    return c;
}

std::string Subspace::to_string() const {
    std::ostringstream os;
    os << "span{";
    for (size_t i = 0; i < basis_.size(); ++i) {
        os << (i ? ", " : "") << '(';
        for (size_t k = 0; k < n_; ++k) os << (k ? "," : "") << basis_[i][k];
        os << ')';
    }
    os << '}';
    return os.str();
}

std::uint64_t vector_count(unsigned ell, size_t n) {
    std::uint64_t c = 1;
    for (size_t i = 0; i < n; ++i) c *= ell;
    return c;
}

FlVector vector_at(unsigned ell, size_t n, std::uint64_t index) {
    FlVector v(n);
    for (size_t i = 0; i < n; ++i) {
        v[i] = static_cast<std::uint32_t>(index % ell);
        index /= ell;
    }
    return v;
}

}  // namespace isolab
