#ifndef SPISO_NUMSTATS_HPP
#define SPISO_NUMSTATS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace spiso {

// Small dense row-major matrix. Everything in this project is k x k with
// k of order 4, except the GRF covariance matrix (n <= 4096).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Matrix transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
std::vector<double> matvec(const Matrix& a, const std::vector<double>& v);

// Lower-triangular Cholesky factor of a symmetric positive-definite matrix.
// Throws NumericalError naming the failing pivot index on breakdown.
Matrix cholesky_lower(const Matrix& m);

// Solve M w = v for symmetric positive-definite M via Cholesky.
// Symmetry is checked to absolute tolerance 1e-10 (scaled by max entry).
std::vector<double> solve_spd(const Matrix& m, const std::vector<double>& v);

// Eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi rotation.
std::vector<double> sym_eigenvalues(Matrix m);

// Upper-tail probability P(X > x) for a chi-square variable with df degrees
// of freedom, computed as the regularized upper incomplete gamma Q(df/2, x/2).
double chisq_survival(double x, int df);

// Regularized upper incomplete gamma Q(a, x), series / continued-fraction split.
double gamma_q(double a, double x);

// Seedable stream of pseudorandom numbers (xoshiro256** seeded through
// splitmix64 from the pair (master_seed, stream_id)). Identical pairs give
// identical sequences; distinct stream_ids give unrelated streams. A stream
// holds mutable state and must not be shared across concurrent consumers.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t master_seed, std::uint64_t stream_id = 0);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 random bits.
  double uniform01();

  // Uniform integer on {0, ..., n-1}, unbiased (rejection).
  std::uint64_t uniform_int(std::uint64_t n);

  // Standard normal via the polar rejection method; pairs are cached.
  double normal();

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace spiso

#endif
