#include "vna/algebra.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace vna {

int BlockAlgebra::dim_sa() const {
  int d = 0;
  for (int n : block_dims) d += n * n;
  return d;
}

int BlockAlgebra::total_dim() const {
  return std::accumulate(block_dims.begin(), block_dims.end(), 0);
}

BlockAlgebra make_algebra(const std::vector<int>& block_dims) {
  if (block_dims.empty())
    throw std::invalid_argument("make_algebra: block dimension list is empty");
  for (int n : block_dims)
    if (n < 1)
      throw std::invalid_argument("make_algebra: block dimension must be >= 1");
  return BlockAlgebra{block_dims};
}

// --- element constructors -------------------------------------------------

AlgebraElement zero_element(const BlockAlgebra& a) {
  std::vector<Mat> blocks;
  blocks.reserve(a.block_dims.size());
  for (int n : a.block_dims) blocks.push_back(Mat::Zero(n, n));
  return {a, std::move(blocks)};
}

AlgebraElement identity_element(const BlockAlgebra& a) {
  std::vector<Mat> blocks;
  blocks.reserve(a.block_dims.size());
  for (int n : a.block_dims) blocks.push_back(Mat::Identity(n, n));
  return {a, std::move(blocks)};
}

AlgebraElement basis_unit(const BlockAlgebra& a, int block, int i, int j) {
  AlgebraElement e = zero_element(a);
  e.blocks.at(block)(i, j) = 1.0;
  return e;
}

AlgebraElement make_element(const BlockAlgebra& a, std::vector<Mat> blocks) {
  if (static_cast<int>(blocks.size()) != a.num_blocks())
    throw std::invalid_argument("make_element: wrong number of blocks");
  for (int k = 0; k < a.num_blocks(); ++k) {
    int n = a.block_dims[k];
    if (blocks[k].rows() != n || blocks[k].cols() != n)
      throw std::invalid_argument("make_element: block " + std::to_string(k) +
                                  " has shape " + std::to_string(blocks[k].rows()) +
                                  "x" + std::to_string(blocks[k].cols()) +
                                  ", expected " + std::to_string(n) + "x" +
                                  std::to_string(n));
  }
  return {a, std::move(blocks)};
}

// --- element arithmetic ---------------------------------------------------

void require_same_algebra(const AlgebraElement& x, const AlgebraElement& y) {
  if (!(x.algebra == y.algebra))
    throw std::invalid_argument("elements belong to different algebras");
}

AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y);
  AlgebraElement r = x;
  for (size_t k = 0; k < r.blocks.size(); ++k) r.blocks[k] += y.blocks[k];
  return r;
}

AlgebraElement sub(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y);
  AlgebraElement r = x;
  for (size_t k = 0; k < r.blocks.size(); ++k) r.blocks[k] -= y.blocks[k];
  return r;
}

AlgebraElement scale(cplx c, const AlgebraElement& x) {
  AlgebraElement r = x;
  for (auto& b : r.blocks) b *= c;
  return r;
}

AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y);
  AlgebraElement r = x;
  for (size_t k = 0; k < r.blocks.size(); ++k) r.blocks[k] = x.blocks[k] * y.blocks[k];
  return r;
}

AlgebraElement adjoint(const AlgebraElement& x) {
  AlgebraElement r = x;
  for (auto& b : r.blocks) b = b.adjoint().eval();
  return r;
}

AlgebraElement transpose_element(const AlgebraElement& x) {
  AlgebraElement r = x;
  for (auto& b : r.blocks) b = b.transpose().eval();
  return r;
}

cplx trace(const AlgebraElement& x) {
  cplx t = 0.0;
  for (const auto& b : x.blocks) t += b.trace();
  return t;
}

double op_norm(const AlgebraElement& x) {
  double m = 0.0;
  for (const auto& b : x.blocks) m = std::max(m, op_norm(b));
  return m;
}

cplx hs_dot(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y);
  cplx s = 0.0;
  for (size_t k = 0; k < x.blocks.size(); ++k)
    s += (y.blocks[k].adjoint() * x.blocks[k]).trace();
  return s;
}

double hs_norm(const AlgebraElement& x) {
  double s = 0.0;
  for (const auto& b : x.blocks) s += b.squaredNorm();
  return std::sqrt(s);
}

bool is_self_adjoint(const AlgebraElement& x, double tol) {
  return op_norm(sub(x, adjoint(x))) <= tol;
}

// --- projections ----------------------------------------------------------

Projection make_projection(const AlgebraElement& x) {
  if (!is_self_adjoint(x))
    throw std::invalid_argument("make_projection: element is not self-adjoint");
  if (op_norm(sub(mul(x, x), x)) > tol::eq)
    throw std::invalid_argument("make_projection: element is not idempotent");
  return Projection{x};
}

int Projection::rank() const {
  double t = trace(elem).real();
  return static_cast<int>(std::lround(t));
}

Projection zero_projection(const BlockAlgebra& a) {
  return Projection{zero_element(a)};
}

Projection identity_projection(const BlockAlgebra& a) {
  return Projection{identity_element(a)};
}

Projection complement(const Projection& p) {
  return Projection{sub(identity_element(p.elem.algebra), p.elem)};
}

bool are_orthogonal(const Projection& p, const Projection& q) {
  require_same_algebra(p.elem, q.elem);
  return op_norm(mul(p.elem, q.elem)) <= tol::zero;
}

std::vector<Projection> minimal_central_projections(const BlockAlgebra& a) {
  std::vector<Projection> out;
  out.reserve(a.block_dims.size());
  for (int k = 0; k < a.num_blocks(); ++k) {
    AlgebraElement e = zero_element(a);
    e.blocks[k] = Mat::Identity(a.block_dims[k], a.block_dims[k]);
    out.push_back(Projection{std::move(e)});
  }
  return out;
}

// --- spectral calculus ----------------------------------------------------

AlgebraElement SpectralDecomposition::resum(const BlockAlgebra& a) const {
  AlgebraElement x = zero_element(a);
  for (size_t i = 0; i < eigenvalues.size(); ++i)
    x = add(x, scale(eigenvalues[i], projections[i].elem));
  return x;
}

SpectralDecomposition spectral_decompose(const AlgebraElement& x) {
  if (!is_self_adjoint(x))
    throw std::invalid_argument("spectral_decompose: element is not self-adjoint");

  struct Entry {
    double value;
    int block;
    int col;
  };
  std::vector<Entry> entries;
  std::vector<Mat> vectors(x.blocks.size());
  for (size_t k = 0; k < x.blocks.size(); ++k) {
    Eigh e = eigh(x.blocks[k]);
    vectors[k] = e.vectors;
    for (int c = 0; c < e.values.size(); ++c)
      entries.push_back({e.values(c), static_cast<int>(k), c});
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.value > b.value; });

  SpectralDecomposition sd;
  size_t i = 0;
  while (i < entries.size()) {
    size_t j = i + 1;
    while (j < entries.size() && entries[j - 1].value - entries[j].value <= tol::cluster)
      ++j;
    AlgebraElement p = zero_element(x.algebra);
    double sum = 0.0;
    for (size_t m = i; m < j; ++m) {
      const Entry& e = entries[m];
      Vec v = vectors[e.block].col(e.col);
      p.blocks[e.block] += v * v.adjoint();
      sum += e.value;
    }
    sd.eigenvalues.push_back(sum / static_cast<double>(j - i));
    sd.projections.push_back(Projection{std::move(p)});
    i = j;
  }
  return sd;
}

AlgebraElement jordan_product(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y);
  return scale(0.5, add(mul(x, y), mul(y, x)));
}

// --- self-adjoint part as a real Hilbert space ------------------------------

namespace {

std::vector<AlgebraElement> build_hermitian_basis(const BlockAlgebra& a) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<AlgebraElement> basis;
  basis.reserve(a.dim_sa());
  for (int k = 0; k < a.num_blocks(); ++k) {
    int n = a.block_dims[k];
    for (int j = 0; j < n; ++j) basis.push_back(basis_unit(a, k, j, j));
    for (int j = 0; j < n; ++j)
      for (int l = j + 1; l < n; ++l) {
        AlgebraElement x = zero_element(a);
        x.blocks[k](j, l) = inv_sqrt2;
        x.blocks[k](l, j) = inv_sqrt2;
        basis.push_back(std::move(x));
        AlgebraElement y = zero_element(a);
        y.blocks[k](j, l) = cplx(0.0, 1.0) * inv_sqrt2;
        y.blocks[k](l, j) = cplx(0.0, -1.0) * inv_sqrt2;
        basis.push_back(std::move(y));
      }
  }
  return basis;
}

} // namespace

const std::vector<AlgebraElement>& hermitian_basis(const BlockAlgebra& a) {
  static std::mutex mutex;
  static std::map<std::vector<int>, std::vector<AlgebraElement>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(a.block_dims);
  if (it == cache.end())
    it = cache.emplace(a.block_dims, build_hermitian_basis(a)).first;
  return it->second;
}

RealVec sa_coords(const AlgebraElement& x) {
  const auto& basis = hermitian_basis(x.algebra);
  RealVec v(static_cast<int>(basis.size()));
  for (size_t b = 0; b < basis.size(); ++b) v(static_cast<int>(b)) = hs_dot(x, basis[b]).real();
  return v;
}

AlgebraElement sa_from_coords(const BlockAlgebra& a, const RealVec& v) {
  const auto& basis = hermitian_basis(a);
  if (v.size() != static_cast<int>(basis.size()))
    throw std::invalid_argument("sa_from_coords: coordinate size mismatch");
  AlgebraElement x = zero_element(a);
  for (size_t b = 0; b < basis.size(); ++b)
    x = add(x, scale(v(static_cast<int>(b)), basis[b]));
  return x;
}

AlgebraElement SelfAdjointMap::apply_sa(const AlgebraElement& x) const {
  if (!(x.algebra == source))
    throw std::invalid_argument("SelfAdjointMap: element not in source algebra");
  return sa_from_coords(target, mat * sa_coords(x));
}

AlgebraElement SelfAdjointMap::apply(const AlgebraElement& x) const {
  AlgebraElement re = scale(0.5, add(x, adjoint(x)));
  AlgebraElement im = scale(cplx(0.0, -0.5), sub(x, adjoint(x)));
  return add(apply_sa(re), scale(cplx(0.0, 1.0), apply_sa(im)));
}

SelfAdjointMap samap_identity(const BlockAlgebra& a) {
  return {a, a, Eigen::MatrixXd::Identity(a.dim_sa(), a.dim_sa())};
}

SelfAdjointMap samap_from_images(const BlockAlgebra& source,
                                 const BlockAlgebra& target,
                                 const std::vector<AlgebraElement>& images) {
  if (static_cast<int>(images.size()) != source.dim_sa())
    throw std::invalid_argument("samap_from_images: need one image per basis element");
  Eigen::MatrixXd m(target.dim_sa(), source.dim_sa());
  for (size_t b = 0; b < images.size(); ++b) {
    if (!(images[b].algebra == target))
      throw std::invalid_argument("samap_from_images: image not in target algebra");
    AlgebraElement h = scale(0.5, add(images[b], adjoint(images[b])));
    m.col(static_cast<int>(b)) = sa_coords(h);
  }
  return {source, target, std::move(m)};
}

} // namespace vna
