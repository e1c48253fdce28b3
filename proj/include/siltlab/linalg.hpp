#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace siltlab {

/// Raised when a caller violates an operation's precondition, e.g. a shape
/// mismatch or a non-prime modulus.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

constexpr int kMaxModulus = 97;

bool is_prime(int p);

/// Arithmetic helpers for residues in [0, p).
int mod_inverse(int a, int p);

inline int mod_add(int a, int b, int p) {
    int s = a + b;
    return s >= p ? s - p : s;
}
inline int mod_sub(int a, int b, int p) {
    int s = a - b;
    return s < 0 ? s + p : s;
}
inline int mod_mul(int a, int b, int p) { return (a * b) % p; }
inline int mod_neg(int a, int p) { return a == 0 ? 0 : p - a; }

/// Dense row-major matrix over F_p.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, int p);
    Mat(int rows, int cols, int p, std::vector<int> entries);

    static Mat identity(int n, int p);
    static Mat zero(int rows, int cols, int p) { return Mat(rows, cols, p); }
    /// Builds from nested rows; every row must have the same length.
    static Mat from_rows(const std::vector<std::vector<int>>& rows, int p, int cols_if_empty = 0);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int modulus() const { return p_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    int operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    void set(int r, int c, int v);
    std::span<const int> row(int r) const {
        return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
    }
    const std::vector<int>& entries() const { return data_; }

    bool is_zero() const;
    Mat transpose() const;
    Mat column(int c) const;
    Mat columns(const std::vector<int>& idx) const;
    Mat rows_subset(const std::vector<int>& idx) const;
    Mat scaled(int s) const;

    friend Mat operator*(const Mat& a, const Mat& b);
    friend Mat operator+(const Mat& a, const Mat& b);
    friend Mat operator-(const Mat& a, const Mat& b);
    friend bool operator==(const Mat& a, const Mat& b) = default;

    std::string to_string() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    int p_ = 2;
    std::vector<int> data_;
};

Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);
/// Block-diagonal sum.
Mat block_diag(const Mat& a, const Mat& b);

struct RrefResult {
    Mat reduced;
    std::vector<int> pivots;
    int rank = 0;
};

RrefResult rref(const Mat& m);
int rank(const Mat& m);

/// Columns form a basis of the right null space.
Mat kernel_basis(const Mat& m);

/// Columns form a basis of the column space (a subset of m's columns).
Mat image_basis(const Mat& m);

/// Some x with a * x = b, or nullopt when inconsistent.
std::optional<Mat> solve(const Mat& a, const Mat& b);

/// Inverse of a square invertible matrix; nullopt when singular.
std::optional<Mat> inverse(const Mat& a);

struct IdempotentSplit {
    Mat p; // rank(e) x n, the projection onto the image
    Mat i; // n x rank(e), the inclusion of the image
};

/// Image factorisation e = i * p with p * i = identity.
IdempotentSplit split_idempotent(const Mat& e);

/// Extends the (independent) columns of `basis` in F_p^n to a full basis;
/// returns only the added columns.
Mat complement_basis(const Mat& basis, int n);

/// Matrix power.
Mat power(const Mat& m, int k);

} // namespace siltlab
