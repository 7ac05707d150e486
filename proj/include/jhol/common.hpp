#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace jhol {

using Complex = std::complex<double>;
using RealVec = Eigen::VectorXd;
using RealMat = Eigen::MatrixXd;

/// A point of C^n. Component c corresponds to real coordinates (2c, 2c+1).
using CVec = std::vector<Complex>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Selects the OpenMP kernel or its single-threaded twin.
enum class Exec { serial, parallel };

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// J fails to be an almost complex structure, or Q(J) is undefined.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// A point or parameter lies outside the domain where an operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed files, configs and command-line input.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The inner fixed-point map is not certified contracting (4 q C_p > 1/2).
class ContractionError : public Error {
 public:
  ContractionError(const std::string& what, double factor) : Error(what), factor_(factor) {}
  double factor() const { return factor_; }

 private:
  double factor_;
};

/// An iterate left the closed unit ball of W^{1,p}.
class BallEscapeError : public Error {
 public:
  BallEscapeError(const std::string& what, double norm) : Error(what), norm_(norm) {}
  double norm() const { return norm_; }

 private:
  double norm_;
};

/// Picard iteration hit its cap; carries the gap history.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> gaps)
      : Error(what), gaps_(std::move(gaps)) {}
  const std::vector<double>& gaps() const { return gaps_; }

 private:
  std::vector<double> gaps_;
};

inline RealVec to_real(std::span<const Complex> z) {
  RealVec x(2 * static_cast<Eigen::Index>(z.size()));
  for (std::size_t c = 0; c < z.size(); ++c) {
    x[2 * c] = z[c].real();
    x[2 * c + 1] = z[c].imag();
  }
  return x;
}

inline CVec to_complex(const RealVec& x) {
  CVec z(static_cast<std::size_t>(x.size() / 2));
  for (std::size_t c = 0; c < z.size(); ++c) z[c] = {x[2 * c], x[2 * c + 1]};
  return z;
}

inline double norm(std::span<const Complex> z) {
  double s = 0.0;
  for (auto v : z) s += std::norm(v);
  return std::sqrt(s);
}

}  // namespace jhol
