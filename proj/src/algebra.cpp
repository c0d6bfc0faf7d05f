#include "wstar/algebra.hpp"

#include <cmath>
#include <sstream>

namespace wstar {

Signature::Signature(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty())
    fail(ErrorCode::InvalidArgument, "signature needs at least one block");
  for (int n : dims_)
    if (n < 1)
      fail(ErrorCode::InvalidArgument,
           "block dimensions must be >= 1, got " + std::to_string(n));
}

Signature Signature::parse(const std::string& spec) {
  // getline drops a trailing empty token, so catch "2," here.
  if (!spec.empty() && spec.back() == ',')
    fail(ErrorCode::ParseError, "trailing comma in signature spec");
  std::vector<int> dims;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      const int n = std::stoi(item, &pos);
      while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
      if (pos != item.size())
        fail(ErrorCode::ParseError, "bad signature token '" + item + "'");
      dims.push_back(n);
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError, "bad signature token '" + item + "'");
    }
  }
  if (dims.empty()) fail(ErrorCode::ParseError, "empty signature spec");
  for (int n : dims)
    if (n < 1) fail(ErrorCode::ParseError, "block dimensions must be >= 1");
  return Signature(dims);
}

int Signature::total_matrix_dim() const {
  int d = 0;
  for (int n : dims_) d += n;
  return d;
}

int Signature::ambient_dim() const {
  int d = 0;
  for (int n : dims_) d += n * n;
  return d;
}

int Signature::tangent_dim() const { return ambient_dim() - 1; }

bool Signature::commutative() const {
  for (int n : dims_)
    if (n != 1) return false;
  return true;
}

std::string Signature::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(dims_[i]);
  }
  return s;
}

void check_same_signature(const Signature& a, const Signature& b,
                          const char* where) {
  if (!(a == b))
    fail(ErrorCode::SignatureMismatch,
         std::string(where) + ": [" + a.to_string() + "] vs [" +
             b.to_string() + "]");
}

AlgebraElement::AlgebraElement(Signature sig, std::vector<Matrix> blocks)
    : sig_(std::move(sig)), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != sig_.blocks())
    fail(ErrorCode::ShapeMismatch,
         "expected " + std::to_string(sig_.blocks()) + " blocks, got " +
             std::to_string(blocks_.size()));
  for (int i = 0; i < sig_.blocks(); ++i) {
    const Matrix& m = blocks_[static_cast<std::size_t>(i)];
    if (m.rows() != sig_.dim(i) || m.cols() != sig_.dim(i))
      fail(ErrorCode::ShapeMismatch,
           "block " + std::to_string(i) + " is " + std::to_string(m.rows()) +
               "x" + std::to_string(m.cols()) + ", expected " +
               std::to_string(sig_.dim(i)) + "x" + std::to_string(sig_.dim(i)));
    if (!m.allFinite())
      fail(ErrorCode::InvalidArgument,
           "block " + std::to_string(i) + " has non-finite entries");
  }
}

AlgebraElement AlgebraElement::zero(const Signature& sig) {
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<std::size_t>(sig.blocks()));
  for (int i = 0; i < sig.blocks(); ++i)
    blocks.push_back(Matrix::Zero(sig.dim(i), sig.dim(i)));
  return AlgebraElement(sig, std::move(blocks));
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
  check_same_signature(sig_, rhs.sig_, "operator+=");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += rhs.blocks_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
  check_same_signature(sig_, rhs.sig_, "operator-=");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= rhs.blocks_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex scale) {
  for (auto& b : blocks_) b *= scale;
  return *this;
}

AlgebraElement identity(const Signature& sig) {
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<std::size_t>(sig.blocks()));
  for (int i = 0; i < sig.blocks(); ++i)
    blocks.push_back(Matrix::Identity(sig.dim(i), sig.dim(i)));
  return AlgebraElement(sig, std::move(blocks));
}

AlgebraElement adjoint(const AlgebraElement& x) {
  std::vector<Matrix> blocks;
  blocks.reserve(x.blocks().size());
  for (const Matrix& b : x.blocks()) blocks.push_back(b.adjoint());
  return AlgebraElement(x.signature(), std::move(blocks));
}

AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) {
  check_same_signature(x.signature(), y.signature(), "multiply");
  std::vector<Matrix> blocks;
  blocks.reserve(x.blocks().size());
  for (std::size_t i = 0; i < x.blocks().size(); ++i)
    blocks.push_back(x.blocks()[i] * y.blocks()[i]);
  return AlgebraElement(x.signature(), std::move(blocks));
}

Complex total_trace(const AlgebraElement& x) {
  Complex t = 0.0;
  for (const Matrix& b : x.blocks()) t += b.trace();
  return t;
}

Complex trace_pair(const AlgebraElement& x, const AlgebraElement& y) {
  check_same_signature(x.signature(), y.signature(), "trace_pair");
  Complex t = 0.0;
  for (std::size_t i = 0; i < x.blocks().size(); ++i)
    t += (x.blocks()[i] * y.blocks()[i]).trace();
  return t;
}

bool is_hermitian(const AlgebraElement& x, double tol) {
  for (const Matrix& b : x.blocks())
    if ((b - b.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

bool is_positive(const AlgebraElement& x, double tol) {
  if (!is_hermitian(x, tol)) return false;
  for (const Matrix& b : x.blocks()) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(b, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol) return false;
  }
  return true;
}

double operator_norm(const AlgebraElement& x) {
  double norm = 0.0;
  for (const Matrix& b : x.blocks()) {
    Eigen::JacobiSVD<Matrix> svd(b);
    norm = std::max(norm, svd.singularValues().maxCoeff());
  }
  return norm;
}

double frobenius_norm(const AlgebraElement& x) {
  double s = 0.0;
  for (const Matrix& b : x.blocks()) s += b.squaredNorm();
  return std::sqrt(s);
}

double max_abs(const AlgebraElement& x) {
  double m = 0.0;
  for (const Matrix& b : x.blocks())
    m = std::max(m, b.cwiseAbs().maxCoeff());
  return m;
}

}  // namespace wstar
