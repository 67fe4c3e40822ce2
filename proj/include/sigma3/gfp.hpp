#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

// Dense linear algebra over GF(p) for small p. Matrices are row lists; a
// subspace is stored as the rows of its reduced echelon basis, which makes the
// basis canonical.
namespace sigma3::gfp {

using Vec = std::vector<int>;
using Mat = std::vector<Vec>;

int inv(int a, int p);

/// Reduces m in place to reduced row echelon form (zero rows dropped) and
/// returns the pivot columns. Pivots are chosen leftmost, first nonzero row.
std::vector<int> rref(Mat& m, int p);

int rank(Mat m, int p);

/// Basis (in reduced echelon form) of { v : m v^T = 0 }.
Mat nullspace(const Mat& m, int cols, int p);

Mat identity(int n);
Mat mul(const Mat& a, const Mat& b, int p);
Vec vec_mat(const Vec& v, const Mat& a, int p);

/// Reduces v modulo the span of an echelon basis with the given pivots.
Vec reduce(const Mat& basis, const std::vector<int>& pivots, Vec v, int p);
bool is_zero(const Vec& v);

/// Canonical basis of the span of the rows.
Mat span(Mat rows, int p);
Mat sum(const Mat& a, const Mat& b, int p);
Mat intersection(const Mat& a, const Mat& b, int cols, int p);
bool contains(const Mat& space, const Vec& v, int p);

/// Image of a row space under v -> v a.
Mat image(const Mat& space, const Mat& a, int p);

/// Byte key of a canonical basis, usable for hashing subspaces.
std::string key(const Mat& space);

/// Number of k-dimensional subspaces of GF(p)^n (fits int64 at our sizes).
std::int64_t gaussian_binomial(int n, int k, int p);

/// Visits every k-dimensional subspace of GF(p)^n once, as a canonical basis.
/// The callback returns false to stop early.
void for_each_subspace(int n, int k, int p, const std::function<bool(const Mat&)>& visit);

}  // namespace sigma3::gfp
