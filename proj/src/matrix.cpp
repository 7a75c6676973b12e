#include "pgl/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace pgl {

Matrix Matrix::identity(FieldPtr field, int n) {
    Matrix m(std::move(field), n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = m.field()->one();
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix: shape mismatch in *");
    Matrix out(F_, rows_, o.cols_);
    const auto& F = *F_;
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            FqElem aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < o.cols_; ++j)
                out.at(i, j) = F.add(out.at(i, j), F.mul(aik, o.at(k, j)));
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
    Matrix out(F_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = F_->add(a_[i], o.a_[i]);
    return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
    Matrix out(F_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = F_->sub(a_[i], o.a_[i]);
    return out;
}

Matrix Matrix::scaled(FqElem c) const {
    Matrix out(F_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = F_->mul(a_[i], c);
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(F_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

FqElem Matrix::trace() const {
    FqElem t = 0;
    for (int i = 0; i < rows_; ++i) t = F_->add(t, at(i, i));
    return t;
}

std::vector<FqElem> Matrix::apply(const std::vector<FqElem>& v) const {
    std::vector<FqElem> out(rows_, 0);
    const auto& F = *F_;
    for (int i = 0; i < rows_; ++i) {
        FqElem s = 0;
        for (int j = 0; j < cols_; ++j) s = F.add(s, F.mul(at(i, j), v[j]));
        out[i] = s;
    }
    return out;
}

std::vector<FqElem> Matrix::apply_row(const std::vector<FqElem>& v) const {
    std::vector<FqElem> out(cols_, 0);
    const auto& F = *F_;
    for (int i = 0; i < rows_; ++i) {
        if (v[i] == 0) continue;
        for (int j = 0; j < cols_; ++j)
            out[j] = F.add(out[j], F.mul(v[i], at(i, j)));
    }
    return out;
}

RrefResult rref(const Matrix& m) {
    RrefResult res;
    res.r = m;
    Matrix& a = res.r;
    const auto& F = *m.field();
    int lead = 0;
    for (int col = 0; col < a.cols() && lead < a.rows(); ++col) {
        int piv = -1;
        for (int i = lead; i < a.rows(); ++i)
            if (a.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != lead)
            for (int j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(lead, j));
        FqElem s = F.inv(a.at(lead, col));
        for (int j = 0; j < a.cols(); ++j) a.at(lead, j) = F.mul(a.at(lead, j), s);
        for (int i = 0; i < a.rows(); ++i) {
            if (i == lead || a.at(i, col) == 0) continue;
            FqElem f = a.at(i, col);
            for (int j = 0; j < a.cols(); ++j)
                a.at(i, j) = F.sub(a.at(i, j), F.mul(f, a.at(lead, j)));
        }
        res.pivots.push_back(col);
        ++lead;
    }
    res.rank = static_cast<int>(res.pivots.size());
    return res;
}

int rank(const Matrix& m) { return rref(m).rank; }

Matrix kernel_basis(const Matrix& m) {
    RrefResult r = rref(m);
    const auto& F = *m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : r.pivots) is_pivot[c] = true;
    int nfree = m.cols() - r.rank;
    Matrix out(m.field(), nfree, m.cols());
    int row = 0;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        out.at(row, c) = F.one();
        for (int i = 0; i < r.rank; ++i)
            out.at(row, r.pivots[i]) = F.neg(r.r.at(i, c));
        ++row;
    }
    return out;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    int n = m.rows();
    Matrix aug(m.field(), n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = m.field()->one();
    }
    RrefResult r = rref(aug);
    for (int i = 0; i < n; ++i)
        if (r.r.at(i, i) != m.field()->one()) return std::nullopt;
    Matrix out(m.field(), n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = r.r.at(i, n + j);
    return out;
}

SolveResult solve_linear(const Matrix& a, const std::vector<FqElem>& b) {
    if (static_cast<int>(b.size()) != a.rows())
        throw std::invalid_argument("solve_linear: dimension mismatch");
    SolveResult res;
    Matrix aug(a.field(), a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    RrefResult r = rref(aug);
    for (int i = 0; i < a.rows(); ++i) {
        bool zero = true;
        for (int j = 0; j < a.cols(); ++j)
            if (r.r.at(i, j) != 0) { zero = false; break; }
        if (zero && r.r.at(i, a.cols()) != 0) {
            res.consistent = false;
            return res;
        }
    }
    res.consistent = true;
    res.particular.assign(a.cols(), 0);
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
        if (r.pivots[i] < a.cols())
            res.particular[r.pivots[i]] = r.r.at(static_cast<int>(i), a.cols());
    res.nullspace = kernel_basis(a);
    return res;
}

std::vector<Matrix> intertwiner_space(const std::vector<Matrix>& acts1,
                                      const std::vector<Matrix>& acts2) {
    if (acts1.size() != acts2.size())
        throw std::invalid_argument("intertwiner_space: list length mismatch");
    if (acts1.empty()) throw std::invalid_argument("intertwiner_space: empty action list");
    FieldPtr F = acts1[0].field();
    int n1 = acts1[0].rows(), n2 = acts2[0].rows();
    for (const auto& a : acts1)
        if (a.rows() != n1 || a.cols() != n1)
            throw std::invalid_argument("intertwiner_space: non-square action");
    for (const auto& a : acts2)
        if (a.rows() != n2 || a.cols() != n2)
            throw std::invalid_argument("intertwiner_space: non-square action");

    // Unknown X is n2 x n1, flattened row-major.  Equation per action pair:
    // X A1 - A2 X = 0, entrywise at (r, c).
    int nun = n1 * n2;
    int neq = static_cast<int>(acts1.size()) * n1 * n2;
    Matrix sys(F, neq, nun);
    int eq = 0;
    for (std::size_t k = 0; k < acts1.size(); ++k) {
        const Matrix& a1 = acts1[k];
        const Matrix& a2 = acts2[k];
        for (int r = 0; r < n2; ++r)
            for (int c = 0; c < n1; ++c) {
                // sum_j X(r,j) A1(j,c) - sum_j A2(r,j) X(j,c) = 0
                for (int j = 0; j < n1; ++j)
                    sys.at(eq, r * n1 + j) = F->add(sys.at(eq, r * n1 + j), a1.at(j, c));
                for (int j = 0; j < n2; ++j)
                    sys.at(eq, j * n1 + c) = F->sub(sys.at(eq, j * n1 + c), a2.at(r, j));
                ++eq;
            }
    }
    Matrix ker = kernel_basis(sys);
    std::vector<Matrix> basis;
    for (int i = 0; i < ker.rows(); ++i) {
        Matrix x(F, n2, n1);
        for (int r = 0; r < n2; ++r)
            for (int c = 0; c < n1; ++c) x.at(r, c) = ker.at(i, r * n1 + c);
        basis.push_back(std::move(x));
    }
    return basis;
}

Matrix row_space(FieldPtr field, const std::vector<std::vector<FqElem>>& rows, int cols) {
    Matrix m(field, static_cast<int>(rows.size()), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < cols; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
    RrefResult r = rref(m);
    Matrix out(field, r.rank, cols);
    for (int i = 0; i < r.rank; ++i)
        for (int j = 0; j < cols; ++j) out.at(i, j) = r.r.at(i, j);
    return out;
}

bool EchelonBasis::add(std::vector<FqElem> v) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        FqElem c = v[pivots_[i]];
        if (c == 0) continue;
        for (int j = 0; j < n_; ++j)
            v[j] = F_->sub(v[j], F_->mul(c, rows_[i][j]));
    }
    int piv = -1;
    for (int j = 0; j < n_; ++j)
        if (v[j] != 0) { piv = j; break; }
    if (piv < 0) return false;
    FqElem s = F_->inv(v[piv]);
    for (int j = 0; j < n_; ++j) v[j] = F_->mul(s, v[j]);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        FqElem c = rows_[i][piv];
        if (c == 0) continue;
        for (int j = 0; j < n_; ++j)
            rows_[i][j] = F_->sub(rows_[i][j], F_->mul(c, v[j]));
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
}

bool EchelonBasis::contains(const std::vector<FqElem>& v) const {
    std::vector<FqElem> w = v;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        FqElem c = w[pivots_[i]];
        if (c == 0) continue;
        for (int j = 0; j < n_; ++j)
            w[j] = F_->sub(w[j], F_->mul(c, rows_[i][j]));
    }
    for (FqElem x : w)
        if (x != 0) return false;
    return true;
}

Matrix EchelonBasis::to_matrix() const {
    std::vector<int> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return pivots_[a] < pivots_[b]; });
    Matrix m(F_, rank(), n_);
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < n_; ++j) m.at(i, j) = rows_[order[i]][j];
    return m;
}

}  // namespace pgl
