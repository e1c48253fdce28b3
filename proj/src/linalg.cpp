#include "siltlab/linalg.hpp"

#include <sstream>
#include <utility>

namespace siltlab {

bool is_prime(int p) {
    if (p < 2) {
        return false;
    }
    for (int d = 2; d * d <= p; ++d) {
        if (p % d == 0) {
            return false;
        }
    }
    return true;
}

int mod_inverse(int a, int p) {
    a %= p;
    if (a == 0) {
        throw ContractError("mod_inverse: zero has no inverse");
    }
    // Fermat: a^(p-2)
    int result = 1;
    int base = a;
    int e = p - 2;
    while (e > 0) {
        if (e & 1) {
            result = (result * base) % p;
        }
        base = (base * base) % p;
        e >>= 1;
    }
    return result;
}

Mat::Mat(int rows, int cols, int p) : Mat(rows, cols, p, std::vector<int>(static_cast<std::size_t>(rows) * cols, 0)) {}

Mat::Mat(int rows, int cols, int p, std::vector<int> entries)
    : rows_(rows), cols_(cols), p_(p), data_(std::move(entries)) {
    if (rows < 0 || cols < 0) {
        throw ContractError("Mat: negative dimension");
    }
    if (p > kMaxModulus || !is_prime(p)) {
        throw ContractError("Mat: modulus " + std::to_string(p) + " is not a prime <= 97");
    }
    if (data_.size() != static_cast<std::size_t>(rows) * cols) {
        throw ContractError("Mat: entry count does not match shape");
    }
    for (int& v : data_) {
        v %= p;
        if (v < 0) {
            v += p;
        }
    }
}

Mat Mat::identity(int n, int p) {
    Mat m(n, n, p);
    for (int i = 0; i < n; ++i) {
        m.data_[static_cast<std::size_t>(i) * n + i] = 1 % p;
    }
    return m;
}

Mat Mat::from_rows(const std::vector<std::vector<int>>& rows, int p, int cols_if_empty) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? cols_if_empty : static_cast<int>(rows.front().size());
    std::vector<int> data;
    data.reserve(static_cast<std::size_t>(r) * c);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != c) {
            throw ContractError("Mat::from_rows: ragged rows");
        }
        data.insert(data.end(), row.begin(), row.end());
    }
    return Mat(r, c, p, std::move(data));
}

void Mat::set(int r, int c, int v) {
    v %= p_;
    if (v < 0) {
        v += p_;
    }
    data_[static_cast<std::size_t>(r) * cols_ + c] = v;
}

bool Mat::is_zero() const {
    for (int v : data_) {
        if (v != 0) {
            return false;
        }
    }
    return true;
}

Mat Mat::transpose() const {
    Mat t(cols_, rows_, p_);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) {
            t.data_[static_cast<std::size_t>(c) * rows_ + r] = (*this)(r, c);
        }
    }
    return t;
}

Mat Mat::column(int c) const { return columns({c}); }

Mat Mat::columns(const std::vector<int>& idx) const {
    Mat out(rows_, static_cast<int>(idx.size()), p_);
    for (int r = 0; r < rows_; ++r) {
        for (std::size_t j = 0; j < idx.size(); ++j) {
            out.data_[static_cast<std::size_t>(r) * idx.size() + j] = (*this)(r, idx[j]);
        }
    }
    return out;
}

Mat Mat::rows_subset(const std::vector<int>& idx) const {
    Mat out(static_cast<int>(idx.size()), cols_, p_);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (int c = 0; c < cols_; ++c) {
            out.data_[i * cols_ + c] = (*this)(idx[i], c);
        }
    }
    return out;
}

Mat Mat::scaled(int s) const {
    Mat out = *this;
    s %= p_;
    if (s < 0) {
        s += p_;
    }
    for (int& v : out.data_) {
        v = (v * s) % p_;
    }
    return out;
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_ || a.p_ != b.p_) {
        throw ContractError("Mat multiply: shape or modulus mismatch");
    }
    const int p = a.p_;
    Mat out(a.rows_, b.cols_, p);
    for (int i = 0; i < a.rows_; ++i) {
        for (int k = 0; k < a.cols_; ++k) {
            int aik = a(i, k);
            if (aik == 0) {
                continue;
            }
            for (int j = 0; j < b.cols_; ++j) {
                auto& o = out.data_[static_cast<std::size_t>(i) * b.cols_ + j];
                o = (o + aik * b(k, j)) % p;
            }
        }
    }
    return out;
}

Mat operator+(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.p_ != b.p_) {
        throw ContractError("Mat add: shape or modulus mismatch");
    }
    Mat out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) {
        out.data_[i] = mod_add(out.data_[i], b.data_[i], a.p_);
    }
    return out;
}

Mat operator-(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.p_ != b.p_) {
        throw ContractError("Mat subtract: shape or modulus mismatch");
    }
    Mat out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) {
        out.data_[i] = mod_sub(out.data_[i], b.data_[i], a.p_);
    }
    return out;
}

std::string Mat::to_string() const {
    std::ostringstream os;
    os << '[';
    for (int r = 0; r < rows_; ++r) {
        os << (r ? ",[" : "[");
        for (int c = 0; c < cols_; ++c) {
            os << (c ? "," : "") << (*this)(r, c);
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

Mat hstack(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) {
        throw ContractError("hstack: row mismatch");
    }
    Mat out(a.rows(), a.cols() + b.cols(), a.modulus());
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c) {
            out.set(r, c, a(r, c));
        }
        for (int c = 0; c < b.cols(); ++c) {
            out.set(r, a.cols() + c, b(r, c));
        }
    }
    return out;
}

Mat vstack(const Mat& a, const Mat& b) {
    if (a.cols() != b.cols()) {
        throw ContractError("vstack: column mismatch");
    }
    std::vector<int> data = a.entries();
    data.insert(data.end(), b.entries().begin(), b.entries().end());
    return Mat(a.rows() + b.rows(), a.cols(), a.modulus(), std::move(data));
}

Mat block_diag(const Mat& a, const Mat& b) {
    Mat out(a.rows() + b.rows(), a.cols() + b.cols(), a.modulus());
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c) {
            out.set(r, c, a(r, c));
        }
    }
    for (int r = 0; r < b.rows(); ++r) {
        for (int c = 0; c < b.cols(); ++c) {
            out.set(a.rows() + r, a.cols() + c, b(r, c));
        }
    }
    return out;
}

RrefResult rref(const Mat& m) {
    const int p = m.modulus();
    const int rows = m.rows();
    const int cols = m.cols();
    std::vector<int> a = m.entries();
    auto at = [&](int r, int c) -> int& { return a[static_cast<std::size_t>(r) * cols + c]; };
    RrefResult res;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i) {
            if (at(i, c) != 0) {
                piv = i;
                break;
            }
        }
        if (piv < 0) {
            continue;
        }
        if (piv != r) {
            for (int j = 0; j < cols; ++j) {
                std::swap(at(piv, j), at(r, j));
            }
        }
        int inv = mod_inverse(at(r, c), p);
        for (int j = c; j < cols; ++j) {
            at(r, j) = (at(r, j) * inv) % p;
        }
        for (int i = 0; i < rows; ++i) {
            if (i == r || at(i, c) == 0) {
                continue;
            }
            int f = at(i, c);
            for (int j = c; j < cols; ++j) {
                at(i, j) = mod_sub(at(i, j), (f * at(r, j)) % p, p);
            }
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    res.reduced = Mat(rows, cols, p, std::move(a));
    return res;
}

int rank(const Mat& m) {
    if (m.empty()) {
        return 0;
    }
    return rref(m).rank;
}

Mat kernel_basis(const Mat& m) {
    const int p = m.modulus();
    const int cols = m.cols();
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int c : rr.pivots) {
        is_pivot[static_cast<std::size_t>(c)] = true;
    }
    std::vector<int> free_cols;
    for (int c = 0; c < cols; ++c) {
        if (!is_pivot[static_cast<std::size_t>(c)]) {
            free_cols.push_back(c);
        }
    }
    Mat k(cols, static_cast<int>(free_cols.size()), p);
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        int f = free_cols[j];
        k.set(f, static_cast<int>(j), 1);
        for (int i = 0; i < rr.rank; ++i) {
            k.set(rr.pivots[static_cast<std::size_t>(i)], static_cast<int>(j), mod_neg(rr.reduced(i, f), p));
        }
    }
    return k;
}

Mat image_basis(const Mat& m) {
    if (m.empty()) {
        return Mat(m.rows(), 0, m.modulus());
    }
    return m.columns(rref(m).pivots);
}

std::optional<Mat> solve(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) {
        throw ContractError("solve: a.rows != b.rows");
    }
    const int p = a.modulus();
    const int n = a.cols();
    Mat aug = hstack(a, b);
    RrefResult rr = rref(aug);
    Mat x(n, b.cols(), p);
    for (int i = 0; i < rr.rank; ++i) {
        int pc = rr.pivots[static_cast<std::size_t>(i)];
        if (pc >= n) {
            return std::nullopt;
        }
        for (int j = 0; j < b.cols(); ++j) {
            x.set(pc, j, rr.reduced(i, n + j));
        }
    }
    return x;
}

std::optional<Mat> inverse(const Mat& a) {
    if (a.rows() != a.cols()) {
        throw ContractError("inverse: non-square matrix");
    }
    if (rank(a) != a.rows()) {
        return std::nullopt;
    }
    return solve(a, Mat::identity(a.rows(), a.modulus()));
}

IdempotentSplit split_idempotent(const Mat& e) {
    if (e.rows() != e.cols()) {
        throw ContractError("split_idempotent: non-square input");
    }
    if (!(e * e == e)) {
        throw ContractError("split_idempotent: input is not idempotent");
    }
    const int p = e.modulus();
    const int n = e.rows();
    Mat i = image_basis(e);
    const int r = i.cols();
    if (r == 0) {
        return {Mat(0, n, p), Mat(n, 0, p)};
    }
    // e = i * q for a unique q since i has independent columns.
    auto q = solve(i, e);
    return {*q, i};
}

Mat complement_basis(const Mat& basis, int n) {
    const int p = basis.modulus();
    Mat current = basis;
    std::vector<int> added;
    int r = basis.cols() == 0 ? 0 : rank(basis);
    for (int c = 0; c < n && r < n; ++c) {
        Mat unit(n, 1, p);
        unit.set(c, 0, 1);
        Mat trial = current.cols() == 0 ? unit : hstack(current, unit);
        int tr = rank(trial);
        if (tr > r) {
            current = trial;
            r = tr;
            added.push_back(c);
        }
    }
    Mat out(n, static_cast<int>(added.size()), p);
    for (std::size_t j = 0; j < added.size(); ++j) {
        out.set(added[j], static_cast<int>(j), 1);
    }
    return out;
}

Mat power(const Mat& m, int k) {
    Mat result = Mat::identity(m.rows(), m.modulus());
    Mat base = m;
    while (k > 0) {
        if (k & 1) {
            result = result * base;
        }
        base = base * base;
        k >>= 1;
    }
    return result;
}

} // namespace siltlab
