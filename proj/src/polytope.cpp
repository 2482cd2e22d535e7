#include "toruslab/polytope.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "toruslab/kernels.hpp"
#include "toruslab/lattice.hpp"
#include "toruslab/rng.hpp"
#include "toruslab/simplex.hpp"
#include "toruslab/wedge.hpp"

namespace tlab {

namespace {

constexpr int kMcPartitions = 64;

double wedge_norm_cols(const Eigen::MatrixXd& B, const std::vector<int>& cols) {
  return wedge_norm(B, cols);
}

// Sum of squared minor moduli; a complex Gram determinant loses every digit
// once entries span a few orders of magnitude.
double wedge_norm_cols(const Eigen::MatrixXcd& B, const std::vector<int>& cols) {
  int k = static_cast<int>(cols.size());
  int n = static_cast<int>(B.rows());
  double s = 0;
  for (const auto& rows : subsets_of_grade(n, k)) {
    Eigen::MatrixXcd sub(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub(i, j) = B(rows[i], cols[j]);
    s += std::norm(sub.determinant());
  }
  return std::sqrt(s);
}

VecQ rationalize(const Eigen::VectorXd& v) {
  VecQ out(v.size());
  for (int i = 0; i < v.size(); ++i) out[i] = rat_from_double(v[i]);
  return out;
}

MatQ rationalize(const Eigen::MatrixXd& m) {
  MatQ out(m.rows(), VecQ(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[i][j] = rat_from_double(m(i, j));
  return out;
}

}  // namespace

HPolytope build_omega(const TorusSpec& spec, const Eigen::MatrixXd& B, double eps) {
  if (eps <= 0) throw std::invalid_argument("build_omega: eps must be positive");
  if (B.rows() != spec.N || B.cols() != spec.N)
    throw std::invalid_argument("build_omega: B must be N x N");
  if (std::abs(B.determinant() - 1.0) > 1e-6)
    throw std::invalid_argument("build_omega: det B must be 1");
  HPolytope P;
  P.dim = spec.split_rank();
  P.chart = spec.chart;
  P.A.resize(static_cast<int>(spec.weight_family.size()), P.dim);
  P.b.resize(static_cast<int>(spec.weight_family.size()));
  int r = 0;
  for (const auto& w : spec.weight_family) {
    double nrm = wedge_norm_cols(B, w.index_set);
    if (nrm < 1e-300)
      throw std::invalid_argument("build_omega: ||B e_xi|| = 0 for " + w.name);
    P.A.row(r) = (w.character.transpose() * spec.chart).row(0);
    P.b[r] = std::log(eps) - std::log(nrm);
    P.labels.push_back(w.name);
    ++r;
  }
  return P;
}

HPolytope build_omega_prime(const TorusSpec& spec, const GeometricEmbedding& emb,
                            const std::vector<Eigen::MatrixXcd>& B_places, double eps) {
  if (eps <= 0) throw std::invalid_argument("build_omega_prime: eps must be positive");
  int places = emb.r1 + emb.s1;
  if (static_cast<int>(B_places.size()) != places)
    throw std::invalid_argument("build_omega_prime: expected one matrix per place");
  for (const auto& Bp : B_places) {
    if (Bp.rows() != spec.N || Bp.cols() != spec.N)
      throw std::invalid_argument("build_omega_prime: place matrix must be N x N");
    if (std::abs(Bp.determinant() - std::complex<double>(1, 0)) > 1e-6)
      throw std::invalid_argument("build_omega_prime: det of each place matrix must be 1");
  }
  double log_det_w = std::log(emb.c_w_f.convert_to<double>());

  HPolytope P;
  P.dim = spec.split_rank();
  P.chart = spec.chart;
  P.A.resize(static_cast<int>(spec.weight_family.size()), P.dim);
  P.b.resize(static_cast<int>(spec.weight_family.size()));
  int r = 0;
  for (const auto& w : spec.weight_family) {
    double sum_log = 0;
    for (int p = 0; p < places; ++p) {
      double nrm = wedge_norm_cols(B_places[p], w.index_set);
      if (nrm < 1e-300)
        throw std::invalid_argument("build_omega_prime: ||tau B e_xi|| = 0 for " + w.name);
      sum_log += (p < emb.r1 ? 1 : 2) * std::log(nrm);
    }
    P.A.row(r) = emb.m0 * (w.character.transpose() * spec.chart).row(0);
    P.b[r] = std::log(eps) -
             static_cast<double>(w.index_set.size()) * log_det_w - sum_log;
    P.labels.push_back(w.name);
    ++r;
  }
  return P;
}

BoundednessReport boundedness(const HPolytope& P) {
  BoundednessReport rep;
  MatQ Age = rationalize(P.A);
  VecQ bge = rationalize(P.b);
  rep.feasible = lp_feasible_point({}, {}, Age, bge, P.dim).has_value();
  if (!rep.feasible) {
    rep.bounded = true;
    return rep;
  }
  // lineality: null space of A gives free directions
  Eigen::FullPivLU<Eigen::MatrixXd> lu(P.A);
  lu.setThreshold(1e-10);
  if (lu.rank() < P.dim) {
    rep.bounded = false;
    rep.direction = lu.kernel().col(0);
    rep.direction.normalize();
    return rep;
  }
  // recession cone: maximize sum(A d) over A d >= 0, -1 <= d_j <= 1
  LpProblem lp;
  int m = static_cast<int>(P.A.rows());
  lp.Age.assign(m + 2 * P.dim, VecQ(P.dim, BigRational(0)));
  lp.bge.assign(m + 2 * P.dim, BigRational(0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < P.dim; ++j) lp.Age[i][j] = rat_from_double(P.A(i, j));
  for (int j = 0; j < P.dim; ++j) {
    lp.Age[m + 2 * j][j] = -1;      // -d_j >= -1
    lp.bge[m + 2 * j] = -1;
    lp.Age[m + 2 * j + 1][j] = 1;   // d_j >= -1
    lp.bge[m + 2 * j + 1] = -1;
  }
  lp.c.assign(P.dim, BigRational(0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < P.dim; ++j) lp.c[j] += lp.Age[i][j];
  LpResult res = lp_solve(lp);
  if (res.status == LpResult::Status::Optimal && res.value > 0) {
    rep.bounded = false;
    rep.direction.resize(P.dim);
    for (int j = 0; j < P.dim; ++j) rep.direction[j] = rat_to_double(res.x[j]);
    rep.direction.normalize();
    return rep;
  }
  rep.bounded = true;
  return rep;
}

std::vector<Eigen::VectorXd> enumerate_vertices(const HPolytope& P) {
  if (P.dim > 4) throw std::invalid_argument("enumerate_vertices: dim > 4 not supported");
  int m = static_cast<int>(P.A.rows());
  int d = P.dim;
  std::vector<Eigen::VectorXd> verts;
  if (d == 0) return verts;
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;
  auto advance = [&]() {
    int i = d - 1;
    while (i >= 0 && idx[i] == m - d + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    return true;
  };
  if (m < d) return verts;
  do {
    Eigen::MatrixXd As(d, d);
    Eigen::VectorXd bs(d);
    for (int i = 0; i < d; ++i) {
      As.row(i) = P.A.row(idx[i]);
      bs[i] = P.b[idx[i]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(As);
    lu.setThreshold(1e-10);
    if (lu.rank() < d) continue;
    Eigen::VectorXd u = lu.solve(bs);
    if ((As * u - bs).cwiseAbs().maxCoeff() > 1e-7 * (1 + bs.cwiseAbs().maxCoeff())) continue;
    bool feas = true;
    for (int k = 0; k < m && feas; ++k) {
      double lhs = P.A.row(k).dot(u);
      if (lhs < P.b[k] - 1e-7 * (1 + std::abs(P.b[k]) + std::abs(lhs))) feas = false;
    }
    if (!feas) continue;
    bool dup = false;
    for (const auto& v : verts)
      if ((v - u).cwiseAbs().maxCoeff() < 1e-7 * (1 + u.cwiseAbs().maxCoeff())) {
        dup = true;
        break;
      }
    if (!dup) verts.push_back(u);
  } while (advance());
  return verts;
}

namespace {

double hull_area_2d(std::vector<Eigen::VectorXd> pts) {
  if (pts.size() < 3) return 0.0;
  Eigen::Vector2d c(0, 0);
  for (const auto& p : pts) c += Eigen::Vector2d(p[0], p[1]);
  c /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
  });
  double A = 0;
  for (size_t k = 0; k < pts.size(); ++k) {
    const auto& p = pts[k];
    const auto& q = pts[(k + 1) % pts.size()];
    A += p[0] * q[1] - q[0] * p[1];
  }
  return std::abs(A) / 2;
}

double hull_volume_3d(const HPolytope& P, const std::vector<Eigen::VectorXd>& verts) {
  Eigen::Vector3d c(0, 0, 0);
  for (const auto& v : verts) c += Eigen::Vector3d(v[0], v[1], v[2]);
  c /= static_cast<double>(verts.size());
  double vol = 0;
  for (int f = 0; f < P.A.rows(); ++f) {
    std::vector<Eigen::Vector3d> face;
    for (const auto& v : verts) {
      double lhs = P.A.row(f).dot(v);
      if (std::abs(lhs - P.b[f]) < 1e-6 * (1 + std::abs(P.b[f]))) face.emplace_back(v[0], v[1], v[2]);
    }
    if (face.size() < 3) continue;
    // order the face vertices around their centroid in the facet plane
    Eigen::Vector3d fc(0, 0, 0);
    for (const auto& p : face) fc += p;
    fc /= static_cast<double>(face.size());
    Eigen::Vector3d n = P.A.row(f).transpose().normalized();
    Eigen::Vector3d e1 = n.unitOrthogonal();
    Eigen::Vector3d e2 = n.cross(e1);
    std::sort(face.begin(), face.end(), [&](const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
      return std::atan2((a - fc).dot(e2), (a - fc).dot(e1)) <
             std::atan2((b - fc).dot(e2), (b - fc).dot(e1));
    });
    for (size_t k = 1; k + 1 < face.size(); ++k) {
      Eigen::Matrix3d T;
      T.col(0) = face[0] - c;
      T.col(1) = face[k] - c;
      T.col(2) = face[k + 1] - c;
      vol += std::abs(T.determinant()) / 6;
    }
  }
  return vol;
}

struct Box {
  Eigen::VectorXd lo, hi;
  double vol() const {
    double v = 1;
    for (int i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
    return v;
  }
};

Box bounding_box(const HPolytope& P) {
  Box box;
  box.lo.resize(P.dim);
  box.hi.resize(P.dim);
  MatQ Age = rationalize(P.A);
  VecQ bge = rationalize(P.b);
  for (int j = 0; j < P.dim; ++j) {
    for (int sgn : {+1, -1}) {
      LpProblem lp;
      lp.Age = Age;
      lp.bge = bge;
      lp.c.assign(P.dim, BigRational(0));
      lp.c[j] = sgn;
      LpResult res = lp_solve(lp);
      if (res.status != LpResult::Status::Optimal)
        throw std::runtime_error("bounding_box: LP not optimal (polytope empty or unbounded)");
      double v = rat_to_double(res.value) * sgn;
      if (sgn > 0)
        box.hi[j] = v + 1e-9;
      else
        box.lo[j] = v - 1e-9;
    }
  }
  return box;
}

std::pair<double, double> mc_volume(const HPolytope& P, const Box& box,
                                    const VolumeOptions& opt) {
  const int d = P.dim;
  std::vector<double> Arow(static_cast<size_t>(P.A.rows()) * d);
  std::vector<double> brow(P.A.rows());
  for (int i = 0; i < P.A.rows(); ++i) {
    for (int j = 0; j < d; ++j) Arow[static_cast<size_t>(i) * d + j] = P.A(i, j);
    brow[i] = P.b[i];
  }
  std::int64_t per = opt.samples / kMcPartitions;
  std::int64_t rem = opt.samples % kMcPartitions;
  std::vector<std::int64_t> inside(kMcPartitions, 0);

  auto run_partition = [&](int p) {
    RngStream rng(opt.seed, 1000 + static_cast<std::uint64_t>(p));
    std::int64_t n = per + (p < rem ? 1 : 0);
    constexpr std::int64_t kChunk = 32768;
    std::vector<std::vector<double>> cols(d, std::vector<double>(kChunk));
    std::vector<const double*> ptrs(d);
    for (int j = 0; j < d; ++j) ptrs[j] = cols[j].data();
    std::int64_t done = 0, count = 0;
    while (done < n) {
      std::int64_t take = std::min(kChunk, n - done);
      for (std::int64_t s = 0; s < take; ++s)
        for (int j = 0; j < d; ++j)
          cols[j][s] = rng.uniform(box.lo[j], box.hi[j]);
      count += static_cast<std::int64_t>(kernels::count_inside(
          ptrs.data(), static_cast<std::size_t>(take), Arow.data(), brow.data(),
          static_cast<std::size_t>(P.A.rows()), static_cast<std::size_t>(d)));
      done += take;
    }
    inside[p] = count;
  };

  int workers = std::max(1, opt.workers);
  if (workers == 1) {
    for (int p = 0; p < kMcPartitions; ++p) run_partition(p);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&]() {
        int p;
        while ((p = next.fetch_add(1)) < kMcPartitions) run_partition(p);
      });
    for (auto& t : pool) t.join();
  }
  std::int64_t total_in = 0;
  for (auto c : inside) total_in += c;
  double phat = static_cast<double>(total_in) / static_cast<double>(opt.samples);
  double bv = box.vol();
  double se = bv * std::sqrt(phat * (1 - phat) / static_cast<double>(opt.samples));
  return {bv * phat, se};
}

}  // namespace

PolytopeStats volume(const HPolytope& P, const VolumeOptions& opt) {
  PolytopeStats st;
  BoundednessReport bd = boundedness(P);
  st.bounded = bd.bounded;
  if (!bd.feasible) {
    st.empty = true;
    st.method = "exact";
    return st;
  }
  st.empty = false;
  if (!bd.bounded) {
    std::ostringstream os;
    os << "volume: unbounded polytope; recession direction [";
    for (int i = 0; i < bd.direction.size(); ++i)
      os << (i ? ", " : "") << bd.direction[i];
    os << "]";
    throw std::runtime_error(os.str());
  }
  ChebyshevResult cheb = inscribed_radius(P);
  st.cheb_radius = cheb.radius;

  VolumeMethod method = opt.method;
  if (method == VolumeMethod::Auto)
    method = P.dim <= 3 ? VolumeMethod::Exact : VolumeMethod::MonteCarlo;
  if (method == VolumeMethod::Exact) {
    if (P.dim > 3) throw std::invalid_argument("volume: exact method needs dim <= 3");
    st.method = "exact";
    auto verts = enumerate_vertices(P);
    st.vertex_count = static_cast<int>(verts.size());
    if (verts.empty()) {
      st.volume = 0;
      return st;
    }
    // affine rank
    Eigen::MatrixXd diff(static_cast<int>(verts.size()) - 1, P.dim);
    for (size_t i = 1; i < verts.size(); ++i) diff.row(static_cast<int>(i) - 1) = (verts[i] - verts[0]).transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(diff);
    lu.setThreshold(1e-9);
    if (verts.size() == 1 || lu.rank() < P.dim) {
      st.volume = 0;
      return st;
    }
    if (P.dim == 1) {
      double lo = verts[0][0], hi = verts[0][0];
      for (const auto& v : verts) {
        lo = std::min(lo, v[0]);
        hi = std::max(hi, v[0]);
      }
      st.volume = hi - lo;
    } else if (P.dim == 2) {
      st.volume = hull_area_2d(verts);
    } else {
      st.volume = hull_volume_3d(P, verts);
    }
    return st;
  }
  if (P.dim > 8) throw std::invalid_argument("volume: Monte Carlo limited to dim <= 8");
  st.method = "mc";
  if (P.dim <= 4) st.vertex_count = static_cast<int>(enumerate_vertices(P).size());
  Box box = bounding_box(P);
  auto [vol, se] = mc_volume(P, box, opt);
  st.volume = vol;
  st.std_error = se;
  return st;
}

ChebyshevResult inscribed_radius(const HPolytope& P) {
  ChebyshevResult out;
  int m = static_cast<int>(P.A.rows());
  LpProblem lp;
  lp.Age.assign(m, VecQ(P.dim + 1, BigRational(0)));
  lp.bge.resize(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < P.dim; ++j) lp.Age[i][j] = rat_from_double(P.A(i, j));
    lp.Age[i][P.dim] = -rat_from_double(P.A.row(i).norm());
    lp.bge[i] = rat_from_double(P.b[i]);
  }
  lp.c.assign(P.dim + 1, BigRational(0));
  lp.c[P.dim] = 1;
  LpResult res = lp_solve(lp);
  if (res.status == LpResult::Status::Unbounded) {
    out.unbounded = true;
    out.radius = std::numeric_limits<double>::infinity();
    return out;
  }
  if (res.status != LpResult::Status::Optimal)
    throw std::runtime_error("inscribed_radius: LP failed");
  out.radius = rat_to_double(res.value);
  out.empty = out.radius < 0;
  out.center.resize(P.dim);
  for (int j = 0; j < P.dim; ++j) out.center[j] = rat_to_double(res.x[j]);
  return out;
}

std::vector<ShrinkRow> shrink_ratio_series(
    const TorusSpec& spec, const std::vector<double>& is,
    const std::function<Eigen::MatrixXd(double)>& B_of_i, double eps,
    const std::function<double(double)>& omega_of_i, const VolumeOptions& opt) {
  std::vector<ShrinkRow> rows;
  for (double i : is) {
    Eigen::MatrixXd B = B_of_i(i);
    HPolytope big = build_omega(spec, B, eps);
    HPolytope small = build_omega(spec, B, eps + omega_of_i(i));
    PolytopeStats vb = volume(big, opt);
    if (vb.volume <= 0)
      throw std::runtime_error("shrink_ratio_series: zero denominator volume at i=" +
                               std::to_string(i));
    PolytopeStats vs = volume(small, opt);
    ShrinkRow row;
    row.i = i;
    row.vol = vb.volume;
    row.vol_shrunk = vs.volume;
    row.ratio = vs.volume / vb.volume;
    row.cheb_radius = vb.cheb_radius;
    rows.push_back(row);
  }
  return rows;
}

bool polytope_contained(const HPolytope& P, const HPolytope& Q, double tol) {
  MatQ Age = rationalize(P.A);
  VecQ bge = rationalize(P.b);
  if (!lp_feasible_point({}, {}, Age, bge, P.dim).has_value()) return true;
  for (int k = 0; k < Q.A.rows(); ++k) {
    LpProblem lp;
    lp.Age = Age;
    lp.bge = bge;
    lp.c.resize(P.dim);
    for (int j = 0; j < P.dim; ++j) lp.c[j] = -rat_from_double(Q.A(k, j));
    LpResult res = lp_solve(lp);
    if (res.status == LpResult::Status::Unbounded) return false;
    if (res.status != LpResult::Status::Optimal)
      throw std::runtime_error("polytope_contained: LP failed");
    double minval = -rat_to_double(res.value);
    if (minval < Q.b[k] - tol) return false;
  }
  return true;
}

}  // namespace tlab
