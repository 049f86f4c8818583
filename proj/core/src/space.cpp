#include "ncft/space.hpp"

#include "ncft/error.hpp"

namespace ncft {

OperatorSpaceDesc OperatorSpaceDesc::schatten(int m, Exponent q) {
  require(m >= 1, ErrorCode::InvalidSpec, "Schatten dimension must be >= 1");
  return OperatorSpaceDesc(Kind::Schatten, m, q);
}

OperatorSpaceDesc OperatorSpaceDesc::diag_lp(int n, Exponent p) {
  require(n >= 1, ErrorCode::InvalidSpec, "DiagLp dimension must be >= 1");
  return OperatorSpaceDesc(Kind::DiagLp, n, p);
}

int OperatorSpaceDesc::linear_dimension() const {
  switch (kind_) {
    case Kind::Scalar: return 1;
    case Kind::Schatten: return dim_ * dim_;
    case Kind::DiagLp: return dim_;
  }
  return 1;
}

OperatorSpaceDesc OperatorSpaceDesc::dual() const {
  switch (kind_) {
    case Kind::Scalar: return *this;
    case Kind::Schatten: return schatten(dim_, exponent_.conjugate());
    case Kind::DiagLp: return diag_lp(dim_, exponent_.conjugate());
  }
  return *this;
}

std::string OperatorSpaceDesc::to_string() const {
  switch (kind_) {
    case Kind::Scalar: return "scalar";
    case Kind::Schatten: return "schatten:" + std::to_string(dim_) + ":" + exponent_.to_string();
    case Kind::DiagLp: return "diaglp:" + std::to_string(dim_) + ":" + exponent_.to_string();
  }
  return "?";
}

OperatorSpaceDesc parse_space(std::string_view text) {
  if (text == "scalar" || text == "C") return OperatorSpaceDesc::scalar();
  std::vector<std::string> parts;
  std::string cur;
  for (const char c : text) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  require(parts.size() == 3, ErrorCode::InvalidSpec,
          "space descriptor must be scalar | schatten:m:q | diaglp:n:p, got '" + std::string(text) + "'");
  int dim = 0;
  try {
    std::size_t used = 0;
    dim = std::stoi(parts[1], &used);
    require(used == parts[1].size(), ErrorCode::InvalidSpec, "bad dimension");
  } catch (const std::logic_error&) {
    fail(ErrorCode::InvalidSpec, "bad dimension in '" + std::string(text) + "'");
  }
  Exponent e;
  try {
    e = parse_exponent(parts[2]);
  } catch (const Error& err) {
    fail(ErrorCode::InvalidSpec, std::string("bad exponent in space descriptor: ") + err.what());
  }
  if (parts[0] == "schatten" || parts[0] == "S") return OperatorSpaceDesc::schatten(dim, e);
  if (parts[0] == "diaglp" || parts[0] == "lp" || parts[0] == "l") return OperatorSpaceDesc::diag_lp(dim, e);
  fail(ErrorCode::InvalidSpec, "unknown space kind '" + parts[0] + "'");
}

// ---------------------------------------------------------------- EValue

namespace {

void check_value_shape(const OperatorSpaceDesc& space, const Matrix& data) {
  const int d = space.dim();
  bool ok = false;
  switch (space.kind()) {
    case OperatorSpaceDesc::Kind::Scalar: ok = data.rows() == 1 && data.cols() == 1; break;
    case OperatorSpaceDesc::Kind::Schatten: ok = data.rows() == d && data.cols() == d; break;
    case OperatorSpaceDesc::Kind::DiagLp: ok = data.rows() == d && data.cols() == 1; break;
  }
  require(ok, ErrorCode::ShapeMismatch,
          "value of shape " + std::to_string(data.rows()) + "x" + std::to_string(data.cols()) +
              " does not fit space " + space.to_string());
}

}  // namespace

EValue::EValue(OperatorSpaceDesc space, Matrix data) : space_(space), data_(std::move(data)) {
  check_value_shape(space_, data_);
}

EValue EValue::scalar(cplx z) {
  Matrix m(1, 1);
  m(0, 0) = z;
  return EValue(OperatorSpaceDesc::scalar(), m);
}

EValue EValue::zero(const OperatorSpaceDesc& space) {
  const int d = space.dim();
  const int cols = space.kind() == OperatorSpaceDesc::Kind::DiagLp ? 1 : d;
  return EValue(space, Matrix::Zero(d, cols));
}

Matrix EValue::embedded() const {
  if (space_.kind() == OperatorSpaceDesc::Kind::DiagLp) return data_.col(0).asDiagonal();
  return data_;
}

EValue EValue::from_embedded(const OperatorSpaceDesc& space, const Matrix& m) {
  const int d = space.matrix_dim();
  require(m.rows() == d && m.cols() == d, ErrorCode::ShapeMismatch, "embedded value has wrong size");
  if (space.kind() != OperatorSpaceDesc::Kind::DiagLp) return EValue(space, m);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      require(i == j || m(i, j) == cplx(0.0), ErrorCode::ShapeMismatch,
              "value leaves the diagonal subspace of " + space.to_string());
  return EValue(space, m.diagonal());
}

EValue& EValue::operator+=(const EValue& other) {
  require(space_ == other.space_, ErrorCode::ShapeMismatch, "adding values from different spaces");
  data_ += other.data_;
  return *this;
}

EValue& EValue::operator*=(cplx s) {
  data_ *= s;
  return *this;
}

// ---------------------------------------------------------------- BlockMatrix

BlockMatrix::BlockMatrix(int outer, OperatorSpaceDesc space, Matrix flat)
    : outer_(outer), space_(space), flat_(std::move(flat)) {
  const int m = space_.matrix_dim();
  require(outer_ >= 1, ErrorCode::ShapeMismatch, "outer dimension must be >= 1");
  require(flat_.rows() == outer_ * m && flat_.cols() == outer_ * m, ErrorCode::ShapeMismatch,
          "flattened block matrix must be " + std::to_string(outer_ * m) + " square");
  if (space_.kind() == OperatorSpaceDesc::Kind::DiagLp) {
    for (int i = 0; i < outer_ * m; ++i)
      for (int j = 0; j < outer_ * m; ++j)
        require(i % m == j % m || flat_(i, j) == cplx(0.0), ErrorCode::ShapeMismatch,
                "block matrix leaves the diagonal subspace of " + space_.to_string());
  }
}

BlockMatrix BlockMatrix::zero(int outer, const OperatorSpaceDesc& space) {
  const int s = outer * space.matrix_dim();
  return BlockMatrix(outer, space, Matrix::Zero(s, s));
}

BlockMatrix BlockMatrix::from_blocks(int outer, const std::vector<EValue>& blocks) {
  require(outer >= 1 && blocks.size() == static_cast<std::size_t>(outer) * outer, ErrorCode::ShapeMismatch,
          "expected outer^2 blocks");
  const OperatorSpaceDesc space = blocks.front().space();
  const int m = space.matrix_dim();
  Matrix flat(outer * m, outer * m);
  for (int i = 0; i < outer; ++i)
    for (int j = 0; j < outer; ++j) {
      const EValue& b = blocks[static_cast<std::size_t>(i) * outer + j];
      require(b.space() == space, ErrorCode::ShapeMismatch, "blocks from different spaces");
      flat.block(i * m, j * m, m, m) = b.embedded();
    }
  return BlockMatrix(outer, space, std::move(flat));
}

BlockMatrix BlockMatrix::elementary(const Matrix& a, const EValue& y) {
  require(a.rows() == a.cols(), ErrorCode::ShapeMismatch, "outer factor must be square");
  return BlockMatrix(static_cast<int>(a.rows()), y.space(), kron(a, y.embedded()));
}

EValue BlockMatrix::block(int i, int j) const {
  const int m = inner();
  return EValue::from_embedded(space_, flat_.block(i * m, j * m, m, m));
}

EValue random_evalue(const OperatorSpaceDesc& space, Rng& rng) {
  const int d = space.dim();
  switch (space.kind()) {
    case OperatorSpaceDesc::Kind::Scalar: return EValue::scalar(complex_gaussian(rng));
    case OperatorSpaceDesc::Kind::Schatten: return EValue(space, gaussian_matrix(d, d, rng));
    case OperatorSpaceDesc::Kind::DiagLp: return EValue(space, gaussian_matrix(d, 1, rng));
  }
  return EValue::zero(space);
}

BlockMatrix random_block_matrix(int outer, const OperatorSpaceDesc& space, Rng& rng) {
  std::vector<EValue> blocks;
  blocks.reserve(static_cast<std::size_t>(outer) * outer);
  for (int k = 0; k < outer * outer; ++k) blocks.push_back(random_evalue(space, rng));
  return BlockMatrix::from_blocks(outer, blocks);
}

}  // namespace ncft
