#include "paracos/h_classification.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "paracos/errors.hpp"

namespace paracos {

namespace {

struct NotExact {};

template <class T>
using Vec = std::vector<T>;
template <class T>
using Mat = std::vector<std::vector<T>>;

Rational abs_of(const Rational& x) { return Rational(abs(x)); }
double abs_of(double x) { return std::fabs(x); }
double to_d(const Rational& x) { return x.get_d(); }
double to_d(double x) { return x; }
int sign_of(const Rational& x) { return sgn(x); }
int sign_of(double x) { return std::fabs(x) < 1e-12 ? 0 : (x > 0 ? 1 : -1); }
Rational sqrt_of(const Rational& x) {
  Rational r;
  if (!rational_sqrt(x, r)) throw NotExact{};
  return r;
}
double sqrt_of(double x) { return std::sqrt(x); }
template <class T>
T from_q(const Rational& q) {
  if constexpr (std::is_same_v<T, Rational>) {
    return q;
  } else {
    return q.get_d();
  }
}

template <class T>
T max_abs(const Mat<T>& m) {
  T best = T(0);
  for (const auto& row : m)
    for (const auto& x : row) best = std::max<T>(best, abs_of(x));
  return best;
}

template <class T>
bool negligible(const T& x, const T& scale) {
  if constexpr (std::is_same_v<T, Rational>) {
    (void)scale;
    return x == 0;
  } else {
    return std::fabs(x) <= 1e-9 * std::max(1.0, scale);
  }
}

// Reduced row echelon form on the first `cols` columns; returns pivot columns.
template <class T>
std::vector<int> rref(Mat<T>& m, int cols) {
  const T scale = max_abs(m);
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (abs_of(m[i][c]) > abs_of(m[piv][c])) piv = i;
    }
    if (negligible(m[piv][c], scale)) continue;
    std::swap(m[r], m[piv]);
    T d = m[r][c];
    for (auto& x : m[r]) x /= d;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r) continue;
      T f = m[i][c];
      if (f == T(0)) continue;
      for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class T>
std::vector<Vec<T>> kernel_of(Mat<T> m, int cols) {
  auto piv = rref(m, cols);
  std::vector<Vec<T>> out;
  for (int f = 0; f < cols; ++f) {
    if (std::find(piv.begin(), piv.end(), f) != piv.end()) continue;
    Vec<T> v(cols, T(0));
    v[f] = T(1);
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][f];
    out.push_back(v);
  }
  return out;
}

// Solution of a consistent (possibly overdetermined) system.
template <class T>
Vec<T> solve_consistent(Mat<T> a, const Vec<T>& b) {
  const int cols = static_cast<int>(a[0].size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
  T scale = max_abs(a);
  auto piv = rref(a, cols);
  if (static_cast<int>(piv.size()) < cols) throw PreconditionError("frame derivative system is singular; resample the point");
  for (std::size_t r = piv.size(); r < a.size(); ++r) {
    if (!negligible(a[r][cols], scale)) throw PreconditionError("frame derivative system is inconsistent");
  }
  Vec<T> x(cols, T(0));
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = a[r][cols];
  return x;
}

template <class T>
Vec<T> mv(const Mat<T>& m, const Vec<T>& v) {
  Vec<T> out(m.size(), T(0));
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = 0; b < v.size(); ++b) out[a] += m[a][b] * v[b];
  return out;
}

template <class T>
Mat<T> mm(const Mat<T>& x, const Mat<T>& y) {
  const std::size_t n = x.size();
  Mat<T> out(n, Vec<T>(n, T(0)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) out[a][b] += x[a][c] * y[c][b];
  return out;
}

template <class T>
Mat<T> scaled_mat(const Mat<T>& m, const T& c) {
  Mat<T> out(m);
  for (auto& row : out)
    for (auto& x : row) x *= c;
  return out;
}

template <class T>
T dot(const Vec<T>& u, const Vec<T>& w) {
  T s = T(0);
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * w[i];
  return s;
}

template <class T>
T gdot(const Mat<T>& g, const Vec<T>& u, const Vec<T>& w) {
  return dot(u, mv(g, w));
}

template <class T>
Vec<T> lin(std::initializer_list<std::pair<T, const Vec<T>*>> terms) {
  Vec<T> out(3, T(0));
  for (const auto& [c, v] : terms)
    for (int i = 0; i < 3; ++i) out[i] += c * (*v)[i];
  return out;
}

template <class T>
Vec<T> sub(const Vec<T>& u, const Vec<T>& w) {
  Vec<T> out(u);
  for (std::size_t i = 0; i < u.size(); ++i) out[i] -= w[i];
  return out;
}

template <class T>
Vec<T> scaled(const Vec<T>& u, const T& c) {
  Vec<T> out(u);
  for (auto& x : out) x *= c;
  return out;
}

template <class T>
Vec<T> cross(const Vec<T>& u, const Vec<T>& w) {
  return {u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]};
}

template <class T>
void orient(Vec<T>& v) {
  T scale = T(0);
  for (const auto& x : v) scale = std::max<T>(scale, abs_of(x));
  for (const auto& x : v) {
    if (negligible(x, scale)) continue;
    if (sign_of(x) < 0)
      for (auto& y : v) y = -y;
    return;
  }
}

// Symbolic ingredients shared by all evaluation points.
struct Fields {
  const AlmostParacontactStructure& s;
  const StructureAnalysis& an;
  TensorField nabla_xi_h;  // (nabla_xi h)
};

Fields make_fields(const AlmostParacontactStructure& s, const StructureAnalysis& an) {
  const auto& ctx = s.ctx;
  TensorField cov = covariant_derivative(an.h, an.geo.gamma);
  TensorField nxh = TensorField::generate(ctx, 1, 1, [&](const Index& i) {
    return sum_over(ctx, 3, [&](int k) { return cov(i[0], i[1], k) * s.xi(k); });
  });
  return {s, an, nxh};
}

template <class T>
struct PointData {
  Mat<T> g, phi, h, nxh;
  std::vector<Mat<T>> dg, dphi, dh;  // d_k of the matrix
  Vec<T> xi, eta;
  std::vector<Vec<T>> dxi, deta;
  std::vector<Mat<T>> gamma;  // gamma[a][i][j]
  T alpha = T(0);
};

template <class T>
std::function<T(const ScalarField&)> evaluator(const std::vector<Rational>& point) {
  if constexpr (std::is_same_v<T, Rational>) {
    return [point](const ScalarField& f) -> Rational {
      auto v = exact_value(f, point);
      if (!v) throw NotExact{};
      return *v;
    };
  } else {
    return [point](const ScalarField& f) { return numeric_value(f, point); };
  }
}

template <class T>
PointData<T> load(const Fields& f, const std::vector<Rational>& point) {
  auto ev = evaluator<T>(point);
  const auto& s = f.s;
  PointData<T> p;
  auto mat = [&](const TensorField& t, int k) {
    Mat<T> m(3, Vec<T>(3));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) m[a][b] = ev(k < 0 ? t(a, b) : t(a, b).partial(k));
    return m;
  };
  auto vec = [&](const TensorField& t, int k) {
    Vec<T> v(3);
    for (int a = 0; a < 3; ++a) v[a] = ev(k < 0 ? t(a) : t(a).partial(k));
    return v;
  };
  p.g = mat(s.g, -1);
  p.phi = mat(s.phi, -1);
  p.h = mat(f.an.h, -1);
  p.nxh = mat(f.nabla_xi_h, -1);
  p.xi = vec(s.xi, -1);
  p.eta = vec(s.eta, -1);
  for (int k = 0; k < 3; ++k) {
    p.dg.push_back(mat(s.g, k));
    p.dphi.push_back(mat(s.phi, k));
    p.dh.push_back(mat(f.an.h, k));
    p.dxi.push_back(vec(s.xi, k));
    p.deta.push_back(vec(s.eta, k));
  }
  p.gamma.assign(3, Mat<T>(3, Vec<T>(3)));
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) p.gamma[a][i][j] = ev(f.an.geo.gamma(a, i, j));
  p.alpha = ev(f.an.alpha_field());
  return p;
}

template <class T>
struct FrameT {
  Vec<T> v[3];
  T lambda = T(0);
  int phi_sign = 1;
  int h_sign = 1;
};

// Timelike unit vector in ker eta seeded by the first coordinate vectors with nonzero projection.
template <class T>
Vec<T> timelike_unit(const PointData<T>& p) {
  std::vector<Vec<T>> proj;
  for (int i = 0; i < 3 && proj.size() < 2; ++i) {
    Vec<T> v(3, T(0));
    v[i] = T(1);
    for (int a = 0; a < 3; ++a) v[a] -= p.eta[i] * p.xi[a];
    T scale = T(1);
    bool zero = true;
    for (const auto& x : v) zero = zero && negligible(x, scale);
    if (zero) continue;
    if (proj.size() == 1) {
      Vec<T> c = cross(proj[0], v);
      bool par = true;
      for (const auto& x : c) par = par && negligible(x, scale);
      if (par) continue;
    }
    proj.push_back(v);
  }
  if (proj.size() < 2) throw PreconditionError("ker eta is degenerate at the point; resample the point");
  Mat<T> G(2, Vec<T>(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) G[i][j] = gdot(p.g, proj[i], proj[j]);
  const T scale = max_abs(G);
  auto ob = orthogonal_basis<T>(G, [&](const T& x) { return negligible(x, scale); });
  if (!ob) throw PreconditionError("metric on ker eta is degenerate at the point; resample the point");
  for (int i = 0; i < 2; ++i) {
    if (sign_of(ob->second[i]) >= 0) continue;
    const auto& c = ob->first[i];
    Vec<T> w = lin<T>({{c[0], &proj[0]}, {c[1], &proj[1]}});
    T nrm = sqrt_of(T(-ob->second[i]));
    return scaled(w, T(T(1) / nrm));
  }
  throw PreconditionError("ker eta has no timelike direction at the point");
}

template <class T>
FrameT<T> frame_for(const PointData<T>& p, const HType& type) {
  FrameT<T> fr;
  Vec<T> e;
  switch (type.tag) {
    case HTag::Zero:
      e = timelike_unit(p);
      break;
    case HTag::H1: {
      T lam0 = sqrt_of(from_q<T>(*type.lambda2));
      bool found = false;
      for (int sg : {1, -1}) {
        Mat<T> m = p.h;
        for (int a = 0; a < 3; ++a) m[a][a] -= T(sg) * lam0;
        auto ker = kernel_of(m, 3);
        if (ker.size() != 1) continue;
        Vec<T> v = ker[0];
        orient(v);
        T gv = gdot(p.g, v, v);
        if (sign_of(gv) >= 0) continue;
        e = scaled(v, T(T(1) / sqrt_of(T(-gv))));
        fr.lambda = T(sg) * lam0;
        found = true;
        break;
      }
      if (!found) throw PreconditionError("no timelike eigenvector of h; resample the point");
      break;
    }
    case HTag::H3: {
      Vec<T> u = timelike_unit(p);
      Vec<T> pu = mv(p.phi, u);
      Vec<T> hu = mv(p.h, u);
      T pc = -gdot(p.g, hu, u);
      T qc = gdot(p.g, hu, pu);
      T t = T(0);
      if (sign_of(pc) != 0) {
        T root = sqrt_of(T(qc * qc - pc * pc));
        t = (qc - T(sign_of(qc)) * root) / pc;
      }
      Vec<T> v = lin<T>({{T(1), &u}, {t, &pu}});
      e = scaled(v, T(T(1) / sqrt_of(T(T(1) - t * t))));
      fr.lambda = gdot(p.g, mv(p.h, e), mv(p.phi, e));
      break;
    }
    case HTag::H2: {
      bool found = false;
      for (int s1 : {1, -1}) {
        Mat<T> m = p.phi;
        for (int a = 0; a < 3; ++a) m[a][a] -= T(s1);
        m.push_back(p.eta);
        auto ker = kernel_of(m, 3);
        if (ker.size() != 1) continue;
        Vec<T> u = ker[0];
        orient(u);
        Vec<T> hu = mv(p.h, u);
        T c = gdot(p.g, u, hu);
        if (sign_of(c) == 0) continue;
        fr.phi_sign = s1;
        fr.h_sign = sign_of(c);
        fr.v[0] = scaled(u, T(T(1) / sqrt_of(abs_of(c))));
        fr.v[1] = scaled(mv(p.h, fr.v[0]), T(fr.h_sign));
        fr.v[2] = p.xi;
        found = true;
        break;
      }
      if (!found) throw PreconditionError("no null phi-eigenvector moved by h; resample the point");
      return fr;
    }
  }
  fr.v[0] = e;
  fr.v[1] = mv(p.phi, e);
  fr.v[2] = p.xi;
  return fr;
}

template <class T>
CheckResult vec_check(const std::string& name, const Vec<T>& residual, const T& scale) {
  for (int a = 0; a < static_cast<int>(residual.size()); ++a) {
    if (!negligible(residual[a], scale)) {
      std::ostringstream os;
      os << "component " << a << " residual " << to_d(residual[a]);
      return {name, CheckStatus::Fail, os.str()};
    }
  }
  return {name, CheckStatus::Pass, ""};
}

template <class T>
CheckResult mat_check(const std::string& name, const Mat<T>& residual, const T& scale) {
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (!negligible(residual[a][b], scale)) {
        std::ostringstream os;
        os << "(" << a << "," << b << ") residual " << to_d(residual[a][b]);
        return {name, CheckStatus::Fail, os.str()};
      }
    }
  }
  return {name, CheckStatus::Pass, ""};
}

template <class T>
CheckResult scalar_check(const std::string& name, const T& lhs, const T& rhs) {
  T scale = std::max<T>(abs_of(lhs), abs_of(rhs));
  if (negligible(T(lhs - rhs), scale)) return {name, CheckStatus::Pass, ""};
  std::ostringstream os;
  os << to_d(lhs) << " != " << to_d(rhs);
  return {name, CheckStatus::Fail, os.str()};
}

template <class T>
Report frame_pattern(const PointData<T>& p, const FrameT<T>& fr, HTag tag) {
  Report r;
  const T one(1);
  auto gm = [&](int i, int j) -> T { return gdot(p.g, fr.v[i], fr.v[j]); };
  if (tag == HTag::H2) {
    r.push_back(scalar_check<T>("g(e1,e1) = 0", gm(0, 0), T(0)));
    r.push_back(scalar_check<T>("g(e2,e2) = 0", gm(1, 1), T(0)));
    r.push_back(scalar_check<T>("g(e1,e2) = 1", gm(0, 1), one));
    r.push_back(scalar_check<T>("g(e1,xi) = 0", gm(0, 2), T(0)));
    r.push_back(scalar_check<T>("g(e2,xi) = 0", gm(1, 2), T(0)));
    r.push_back(vec_check<T>("h e1 = eps e2", sub(mv(p.h, fr.v[0]), scaled(fr.v[1], T(fr.h_sign))), one));
    r.push_back(vec_check<T>("h e2 = 0", mv(p.h, fr.v[1]), one));
    r.push_back(vec_check<T>("phi e1 = s e1", sub(mv(p.phi, fr.v[0]), scaled(fr.v[0], T(fr.phi_sign))), one));
  } else {
    r.push_back(scalar_check<T>("-g(e,e) = 1", T(-gm(0, 0)), one));
    r.push_back(scalar_check<T>("g(phi e,phi e) = 1", gm(1, 1), one));
    r.push_back(scalar_check<T>("g(e,phi e) = 0", gm(0, 1), T(0)));
    r.push_back(scalar_check<T>("g(e,xi) = 0", gm(0, 2), T(0)));
    if (tag == HTag::H1) {
      r.push_back(vec_check<T>("h e = lambda e", sub(mv(p.h, fr.v[0]), scaled(fr.v[0], fr.lambda)), one));
      r.push_back(vec_check<T>("h phi e = -lambda phi e", sub(mv(p.h, fr.v[1]), scaled(fr.v[1], T(-fr.lambda))), one));
    } else if (tag == HTag::H3) {
      r.push_back(vec_check<T>("h e = lambda phi e", sub(mv(p.h, fr.v[0]), scaled(fr.v[1], fr.lambda)), one));
      r.push_back(vec_check<T>("h phi e = -lambda e", sub(mv(p.h, fr.v[1]), scaled(fr.v[0], T(-fr.lambda))), one));
    }
  }
  r.push_back(vec_check<T>("e3 = xi", sub(fr.v[2], p.xi), one));
  return r;
}

template <class T>
std::vector<Vec<T>> to_vectors(const AdaptedFrame& f) {
  std::vector<Vec<T>> out;
  for (int i = 0; i < 3; ++i) {
    if constexpr (std::is_same_v<T, Rational>) {
      out.push_back((*f.exact_vectors)[i]);
    } else {
      out.push_back(f.vectors[i]);
    }
  }
  return out;
}

template <class T>
FrameT<T> frame_from(const AdaptedFrame& f) {
  FrameT<T> fr;
  auto v = to_vectors<T>(f);
  for (int i = 0; i < 3; ++i) fr.v[i] = v[i];
  if constexpr (std::is_same_v<T, Rational>) {
    fr.lambda = f.exact_lambda.value_or(Rational(0));
  } else {
    fr.lambda = f.lambda;
  }
  fr.phi_sign = f.phi_sign;
  fr.h_sign = f.h_sign;
  return fr;
}

// First-order jet of the adapted frame: d[i][k] = d_k of frame vector i, dlam[k] = d_k lambda.
template <class T>
struct FrameJet {
  Vec<T> d[3][3];
  Vec<T> dlam = Vec<T>(3, T(0));
};

template <class T>
FrameJet<T> frame_jet(const PointData<T>& p, const FrameT<T>& fr, HTag tag) {
  FrameJet<T> jet;
  const Vec<T>& e = fr.v[0];
  for (int k = 0; k < 3; ++k) {
    jet.d[2][k] = p.dxi[k];
    if (tag == HTag::Zero) {
      jet.d[0][k] = jet.d[1][k] = Vec<T>(3, T(0));
      continue;
    }
    Vec<T> ge = mv(p.g, e);
    T eta_rhs = -dot(p.deta[k], e);
    if (tag == HTag::H2) {
      const T eps(fr.h_sign);
      Vec<T> he = mv(p.h, e);
      Vec<T> ghe = mv(p.g, he);
      Vec<T> hTge(3, T(0));
      for (int j = 0; j < 3; ++j)
        for (int a = 0; a < 3; ++a) hTge[j] += ge[a] * p.h[a][j];
      Mat<T> A(5, Vec<T>(3, T(0)));
      Vec<T> b(5, T(0));
      Vec<T> dphie = mv(p.dphi[k], e);
      for (int a = 0; a < 3; ++a) {
        for (int j = 0; j < 3; ++j) A[a][j] = p.phi[a][j] - (a == j ? T(fr.phi_sign) : T(0));
        b[a] = -dphie[a];
      }
      A[3] = p.eta;
      b[3] = eta_rhs;
      for (int j = 0; j < 3; ++j) A[4][j] = eps * (ghe[j] + hTge[j]);
      b[4] = -eps * (gdot(p.dg[k], e, he) + gdot(p.g, e, mv(p.dh[k], e)));
      Vec<T> de = solve_consistent(A, b);
      jet.d[0][k] = de;
      Vec<T> d2 = mv(p.dh[k], e);
      Vec<T> hde = mv(p.h, de);
      for (int a = 0; a < 3; ++a) d2[a] = eps * (d2[a] + hde[a]);
      jet.d[1][k] = d2;
      continue;
    }
    // unknowns (de, dlambda)
    Mat<T> A(5, Vec<T>(4, T(0)));
    Vec<T> b(5, T(0));
    Vec<T> rhs = scaled(mv(p.dh[k], e), T(-1));
    Vec<T> col;
    if (tag == HTag::H1) {
      for (int a = 0; a < 3; ++a)
        for (int j = 0; j < 3; ++j) A[a][j] = p.h[a][j] - (a == j ? fr.lambda : T(0));
      col = e;
    } else {
      for (int a = 0; a < 3; ++a)
        for (int j = 0; j < 3; ++j) A[a][j] = p.h[a][j] - fr.lambda * p.phi[a][j];
      col = mv(p.phi, e);
      Vec<T> dpe = mv(p.dphi[k], e);
      for (int a = 0; a < 3; ++a) rhs[a] += fr.lambda * dpe[a];
    }
    for (int a = 0; a < 3; ++a) {
      A[a][3] = -col[a];
      b[a] = rhs[a];
    }
    for (int j = 0; j < 3; ++j) A[3][j] = p.eta[j];
    b[3] = eta_rhs;
    for (int j = 0; j < 3; ++j) A[4][j] = T(2) * ge[j];
    b[4] = -gdot(p.dg[k], e, e);
    Vec<T> x = solve_consistent(A, b);
    jet.d[0][k] = {x[0], x[1], x[2]};
    jet.dlam[k] = x[3];
    Vec<T> dpe = mv(p.dphi[k], e);
    Vec<T> pde = mv(p.phi, jet.d[0][k]);
    for (int a = 0; a < 3; ++a) dpe[a] += pde[a];
    jet.d[1][k] = dpe;
  }
  return jet;
}

template <class T>
Vec<T> nabla(const PointData<T>& p, const FrameT<T>& fr, const FrameJet<T>& jet, int x, int y) {
  Vec<T> out(3, T(0));
  const Vec<T>& X = fr.v[x];
  const Vec<T>& Y = fr.v[y];
  for (int k = 0; k < 3; ++k) {
    for (int a = 0; a < 3; ++a) {
      T s = jet.d[y][k][a];
      for (int j = 0; j < 3; ++j) s += p.gamma[a][k][j] * Y[j];
      out[a] += X[k] * s;
    }
  }
  return out;
}

template <class T>
Vec<T> bracket(const FrameT<T>& fr, const FrameJet<T>& jet, int x, int y) {
  Vec<T> out(3, T(0));
  for (int k = 0; k < 3; ++k)
    for (int a = 0; a < 3; ++a) out[a] += fr.v[x][k] * jet.d[y][k][a] - fr.v[y][k] * jet.d[x][k][a];
  return out;
}

template <class T>
void put(FrameDerivativeTable& t, const std::string& name, const T& v) {
  t.coefficients[name] = to_d(v);
  if constexpr (std::is_same_v<T, Rational>) t.exact_coefficients[name] = v;
}

template <class T>
Mat<T> operator_combo(std::initializer_list<std::pair<T, const Mat<T>*>> terms) {
  Mat<T> out(3, Vec<T>(3, T(0)));
  for (const auto& [c, m] : terms)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) out[a][b] += c * (*m)[a][b];
  return out;
}

template <class T>
Mat<T> identity3() {
  Mat<T> m(3, Vec<T>(3, T(0)));
  for (int a = 0; a < 3; ++a) m[a][a] = T(1);
  return m;
}

template <class T>
Mat<T> outer(const Vec<T>& v, const Vec<T>& w) {
  Mat<T> m(3, Vec<T>(3));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) m[a][b] = v[a] * w[b];
  return m;
}

template <class T>
Vec<T> qxi_at(const Fields& f, const std::vector<Rational>& point) {
  auto ev = evaluator<T>(point);
  TensorField q = apply(f.an.geo.ricci_op, f.s.xi);
  return {ev(q(0)), ev(q(1)), ev(q(2))};
}

template <class T>
FrameDerivativeTable tables(const Fields& f, const PointData<T>& p, const FrameT<T>& fr, HTag tag,
                            const std::vector<Rational>& point) {
  FrameDerivativeTable t;
  t.tag = tag;
  t.exact = std::is_same_v<T, Rational>;
  FrameJet<T> jet = frame_jet(p, fr, tag);
  const T alpha = p.alpha;
  const T lam = fr.lambda;
  const Vec<T>& e = fr.v[0];
  const Vec<T>& pe = fr.v[1];
  const Vec<T>& xi = fr.v[2];
  Vec<T> qxi = qxi_at<T>(f, point);
  auto sigma = [&](const Vec<T>& v) -> T { return gdot(p.g, qxi, v) - dot(p.eta, v) * gdot(p.g, qxi, p.xi); };
  auto along = [&](const Vec<T>& v, const Vec<T>& df) -> T {
    return dot(v, df);
  };
  auto nab = [&](int x, int y) { return nabla(p, fr, jet, x, y); };
  auto br = [&](int x, int y) { return bracket(fr, jet, x, y); };
  T scale = std::max<T>(T(1), max_abs(p.h));
  scale = std::max<T>(scale, abs_of(alpha));
  auto vcheck = [&](const std::string& name, const Vec<T>& lhs, const Vec<T>& rhs) {
    t.checks.push_back(vec_check<T>(name, sub(lhs, rhs), scale));
  };
  {
    const char* labels[3] = {"e", "phi e", "xi"};
    if (tag == HTag::H2) labels[0] = "e1", labels[1] = "e2";
    auto store = [&](const std::string& k, const Vec<T>& v) {
      std::vector<double> d;
      for (const auto& x : v) d.push_back(to_d(x));
      t.vectors[k] = d;
    };
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) {
        if (tag == HTag::Zero && y != 2) continue;
        store(std::string("nabla_{") + labels[x] + "} " + labels[y], nab(x, y));
      }
    for (int x = 0; x < 3 && tag != HTag::Zero; ++x)
      for (int y = x + 1; y < 3; ++y) store(std::string("[") + labels[x] + ", " + labels[y] + "]", br(x, y));
  }
  Mat<T> hphi = mm(p.h, p.phi);
  Mat<T> h2 = mm(p.h, p.h);
  Mat<T> phi2 = mm(p.phi, p.phi);
  T sxx = gdot(p.g, qxi, p.xi);

  if (tag == HTag::Zero) {
    vcheck("nabla_e xi = alpha e", nab(0, 2), scaled(e, alpha));
    vcheck("nabla_{phi e} xi = alpha phi e", nab(1, 2), scaled(pe, alpha));
    vcheck("nabla_xi xi = 0", nab(2, 2), Vec<T>(3, T(0)));
    t.checks.push_back(mat_check<T>("h = 0", p.h, scale));
    put(t, "sigma(e)", sigma(e));
    put(t, "sigma(phi e)", sigma(pe));
    return t;
  }

  if (tag == HTag::H2) {
    const T s1(fr.phi_sign), eps(fr.h_sign);
    const Vec<T>& e1 = fr.v[0];
    const Vec<T>& e2 = fr.v[1];
    T a2 = gdot(p.g, nab(2, 0), e2);
    T b1 = gdot(p.g, nab(0, 1), e1);
    T b2 = gdot(p.g, nab(1, 1), e1);
    put(t, "a2", a2);
    put(t, "b1", b1);
    put(t, "b2", b2);
    put(t, "sigma(e1)", sigma(e1));
    put(t, "sigma(e2)", sigma(e2));
    put(t, "s", s1);
    put(t, "eps", eps);
    const T se = s1 * eps;
    vcheck("nabla_{e1} e1 = -b1 e1 + s eps xi", nab(0, 0), lin<T>({{T(-b1), &e1}, {se, &xi}}));
    vcheck("nabla_{e1} e2 = b1 e2 - alpha xi", nab(0, 1), lin<T>({{b1, &e2}, {T(-alpha), &xi}}));
    vcheck("nabla_{e1} xi = alpha e1 - s eps e2", nab(0, 2), lin<T>({{alpha, &e1}, {T(-se), &e2}}));
    vcheck("nabla_{e2} e1 = -b2 e1 - alpha xi", nab(1, 0), lin<T>({{T(-b2), &e1}, {T(-alpha), &xi}}));
    vcheck("nabla_{e2} e2 = b2 e2", nab(1, 1), scaled(e2, b2));
    vcheck("nabla_{e2} xi = alpha e2", nab(1, 2), scaled(e2, alpha));
    vcheck("nabla_xi e1 = a2 e1", nab(2, 0), scaled(e1, a2));
    vcheck("nabla_xi e2 = -a2 e2", nab(2, 1), scaled(e2, T(-a2)));
    vcheck("[e1, xi] = (alpha - a2) e1 - s eps e2", br(0, 2), lin<T>({{T(alpha - a2), &e1}, {T(-se), &e2}}));
    vcheck("[e2, xi] = (alpha + a2) e2", br(1, 2), scaled(e2, T(alpha + a2)));
    vcheck("[e1, e2] = b2 e1 + b1 e2", br(0, 1), lin<T>({{b2, &e1}, {b1, &e2}}));
    t.checks.push_back(mat_check<T>("nabla_xi h = -2 s a2 h phi",
                                    operator_combo<T>({{T(1), &p.nxh}, {T(T(2) * s1 * a2), &hphi}}), scale));
    t.checks.push_back(mat_check<T>("h^2 = 0", h2, scale));
    t.checks.push_back(scalar_check<T>("b2 = -s eps sigma(e1) / 2", b2, T(-se * sigma(e1) / T(2))));
    t.checks.push_back(scalar_check<T>("sigma(e2) = 0", sigma(e2), T(0)));
    return t;
  }

  T dl_e = along(e, jet.dlam);
  T dl_pe = along(pe, jet.dlam);
  T dl_xi = along(xi, jet.dlam);
  T a = gdot(p.g, nab(2, 0), pe);
  T se = sigma(e), spe = sigma(pe);
  put(t, "lambda", lam);
  put(t, "e(lambda)", dl_e);
  put(t, "(phi e)(lambda)", dl_pe);
  put(t, "xi(lambda)", dl_xi);
  put(t, "sigma(e)", se);
  put(t, "sigma(phi e)", spe);
  Mat<T> sop = scaled_mat(p.h, T(T(1) / lam));
  Mat<T> tail = operator_combo<T>({{T(1), &h2}, {T(-alpha * alpha), &phi2}, {T(-sxx / T(2)), &phi2}});

  if (tag == HTag::H1) {
    put(t, "a1", a);
    T c1 = (se - dl_pe) / (T(2) * lam);
    T c2 = -(spe + dl_e) / (T(2) * lam);
    vcheck("nabla_e e = (sigma(e) - (phi e)(lambda))/(2 lambda) phi e + alpha xi", nab(0, 0),
           lin<T>({{c1, &pe}, {alpha, &xi}}));
    vcheck("nabla_e phi e = (sigma(e) - (phi e)(lambda))/(2 lambda) e - lambda xi", nab(0, 1),
           lin<T>({{c1, &e}, {T(-lam), &xi}}));
    vcheck("nabla_e xi = alpha e + lambda phi e", nab(0, 2), lin<T>({{alpha, &e}, {lam, &pe}}));
    vcheck("nabla_{phi e} e = -(sigma(phi e) + e(lambda))/(2 lambda) phi e - lambda xi", nab(1, 0),
           lin<T>({{c2, &pe}, {T(-lam), &xi}}));
    vcheck("nabla_{phi e} phi e = -(sigma(phi e) + e(lambda))/(2 lambda) e - alpha xi", nab(1, 1),
           lin<T>({{c2, &e}, {T(-alpha), &xi}}));
    vcheck("nabla_{phi e} xi = alpha phi e - lambda e", nab(1, 2), lin<T>({{alpha, &pe}, {T(-lam), &e}}));
    vcheck("nabla_xi e = a1 phi e", nab(2, 0), scaled(pe, a));
    vcheck("nabla_xi phi e = a1 e", nab(2, 1), scaled(e, a));
    vcheck("[e, xi] = alpha e + (lambda - a1) phi e", br(0, 2), lin<T>({{alpha, &e}, {T(lam - a), &pe}}));
    vcheck("[phi e, xi] = -(lambda + a1) e + alpha phi e", br(1, 2), lin<T>({{T(-(lam + a)), &e}, {alpha, &pe}}));
    vcheck("[e, phi e] = (sigma(e) - (phi e)(lambda))/(2 lambda) e + (sigma(phi e) + e(lambda))/(2 lambda) phi e",
           br(0, 1), lin<T>({{c1, &e}, {T(-c2), &pe}}));
    t.checks.push_back(mat_check<T>("nabla_xi h = xi(lambda) s - 2 a1 h phi, s = h / lambda",
                                    operator_combo<T>({{T(1), &p.nxh}, {T(-dl_xi), &sop}, {T(T(2) * a), &hphi}}),
                                    scale));
  } else {
    put(t, "a3", a);
    T b3 = gdot(p.g, nab(0, 0), pe);
    T b4 = gdot(p.g, nab(1, 0), pe);
    put(t, "b3", b3);
    put(t, "b4", b4);
    vcheck("nabla_e e = b3 phi e + (alpha + lambda) xi", nab(0, 0), lin<T>({{b3, &pe}, {T(alpha + lam), &xi}}));
    vcheck("nabla_e phi e = b3 e", nab(0, 1), scaled(e, b3));
    vcheck("nabla_e xi = (alpha + lambda) e", nab(0, 2), scaled(e, T(alpha + lam)));
    vcheck("nabla_{phi e} e = b4 phi e", nab(1, 0), scaled(pe, b4));
    vcheck("nabla_{phi e} phi e = b4 e + (lambda - alpha) xi", nab(1, 1), lin<T>({{b4, &e}, {T(lam - alpha), &xi}}));
    vcheck("nabla_{phi e} xi = -(lambda - alpha) phi e", nab(1, 2), scaled(pe, T(alpha - lam)));
    vcheck("nabla_xi e = a3 phi e", nab(2, 0), scaled(pe, a));
    vcheck("nabla_xi phi e = a3 e", nab(2, 1), scaled(e, a));
    vcheck("[e, xi] = (alpha + lambda) e - a3 phi e", br(0, 2), lin<T>({{T(alpha + lam), &e}, {T(-a), &pe}}));
    vcheck("[phi e, xi] = -a3 e - (lambda - alpha) phi e", br(1, 2), lin<T>({{T(-a), &e}, {T(alpha - lam), &pe}}));
    vcheck("[e, phi e] = b3 e - b4 phi e", br(0, 1), lin<T>({{b3, &e}, {T(-b4), &pe}}));
    t.checks.push_back(mat_check<T>("nabla_xi h = xi(lambda) s - 2 a3 h phi, s = h / lambda",
                                    operator_combo<T>({{T(1), &p.nxh}, {T(-dl_xi), &sop}, {T(T(2) * a), &hphi}}),
                                    scale));
    t.checks.push_back(scalar_check<T>("b3 = -(sigma(phi e) + (phi e)(lambda))/(2 lambda)", b3,
                                       T(-(spe + dl_pe) / (T(2) * lam))));
    t.checks.push_back(scalar_check<T>("b4 = (sigma(e) - e(lambda))/(2 lambda)", b4, T((se - dl_e) / (T(2) * lam))));
  }
  t.checks.push_back(mat_check<T>("h^2 - alpha^2 phi^2 = S(xi,xi)/2 phi^2", tail, scale));
  return t;
}

template <class T>
Mat<T> point_matrix(const TensorField& m, const std::vector<Rational>& point) {
  auto ev = evaluator<T>(point);
  Mat<T> out(3, Vec<T>(3));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) out[a][b] = ev(m(a, b));
  return out;
}

template <class T>
CheckResult ricci_check(const Fields& f, const PointData<T>& p, const FrameT<T>& fr, HTag tag, const TensorField& Q,
                        const std::vector<Rational>& point) {
  Mat<T> q = point_matrix<T>(Q, point);
  const T alpha = p.alpha;
  T r = q[0][0] + q[1][1] + q[2][2];
  Vec<T> qxi = mv(q, p.xi);
  T sxx = gdot(p.g, qxi, p.xi);
  Vec<T> gq = mv(p.g, qxi);
  Vec<T> sigma(3);
  for (int b = 0; b < 3; ++b) sigma[b] = gq[b] - p.eta[b] * sxx;
  auto sig = [&](const Vec<T>& v) -> T { return dot(sigma, v); };
  Mat<T> id = identity3<T>();
  Mat<T> xe = outer(p.xi, p.eta);
  Mat<T> phih = mm(p.phi, p.h);
  Mat<T> phinxh = mm(p.phi, p.nxh);
  Mat<T> xs = outer(p.xi, sigma);
  const T half_r = r / T(2);
  const T a2 = alpha * alpha;
  const T l2 = fr.lambda * fr.lambda;
  Mat<T> rhs;
  std::string name;
  if (tag == HTag::H1 || tag == HTag::H3) {
    Mat<T> ee = outer(fr.v[0], p.eta);
    Mat<T> pee = outer(fr.v[1], p.eta);
    T ci = tag == HTag::H1 ? T(half_r + a2 - l2) : T(a2 + l2 + half_r);
    T cx = tag == HTag::H1 ? T(-half_r + T(3) * (l2 - a2)) : T(T(-3) * (l2 + a2) - half_r);
    name = tag == HTag::H1 ? "Q = (r/2 + alpha^2 - lambda^2) I + (-r/2 + 3(lambda^2 - alpha^2)) eta (x) xi - 2 alpha phi h"
                             " - phi(nabla_xi h) + sigma(phi^2) (x) xi - sigma(e) eta (x) e + sigma(phi e) eta (x) phi e"
                           : "Q = (alpha^2 + lambda^2 + r/2) I + (-3(lambda^2 + alpha^2) - r/2) eta (x) xi - 2 alpha phi h"
                             " - phi(nabla_xi h) + sigma(phi^2) (x) xi - sigma(e) eta (x) e + sigma(phi e) eta (x) phi e";
    rhs = operator_combo<T>({{ci, &id},
                             {cx, &xe},
                             {T(T(-2) * alpha), &phih},
                             {T(-1), &phinxh},
                             {T(1), &xs},
                             {T(-sig(fr.v[0])), &ee},
                             {sig(fr.v[1]), &pee}});
  } else if (tag == HTag::H2) {
    Mat<T> e2e = outer(fr.v[1], p.eta);
    name = "Q = (r/2 + alpha^2) I - (r/2 + 3 alpha^2) eta (x) xi - 2 alpha phi h - phi(nabla_xi h)"
           " + sigma(phi^2) (x) xi + sigma(e1) eta (x) e2";
    rhs = operator_combo<T>({{T(half_r + a2), &id},
                             {T(-(half_r + T(3) * a2)), &xe},
                             {T(T(-2) * alpha), &phih},
                             {T(-1), &phinxh},
                             {T(1), &xs},
                             {sig(fr.v[0]), &e2e}});
  } else {
    Vec<T> qd = sub(qxi, scaled(p.xi, sxx));
    Mat<T> qde = outer(qd, p.eta);
    name = "Q = (r/2 + alpha^2) I - (r/2 + 3 alpha^2) eta (x) xi - 2 alpha phi h - phi(nabla_xi h)"
           " + sigma(phi^2) (x) xi + eta (x) (Q xi)|ker eta";
    rhs = operator_combo<T>({{T(half_r + a2), &id},
                             {T(-(half_r + T(3) * a2)), &xe},
                             {T(T(-2) * alpha), &phih},
                             {T(-1), &phinxh},
                             {T(1), &xs},
                             {T(1), &qde}});
  }
  (void)f;
  T scale = std::max<T>(T(1), max_abs(q));
  Mat<T> res = operator_combo<T>({{T(1), &q}, {T(-1), &rhs}});
  return mat_check<T>(name, res, scale);
}

void require_3d(const AlmostParacontactStructure& s) {
  if (s.dim() != 3) throw PreconditionError("h classification is defined in dimension 3 only");
}

void require_constant_alpha(const StructureAnalysis& an) {
  if (!an.is_apc() || !an.alpha.alpha_constant) {
    throw PreconditionError("frame tables require an almost alpha-paracosymplectic structure with constant alpha");
  }
}

}  // namespace

const char* htag_name(HTag t) {
  switch (t) {
    case HTag::Zero:
      return "zero";
    case HTag::H1:
      return "h1";
    case HTag::H2:
      return "h2";
    case HTag::H3:
      return "h3";
  }
  return "?";
}

HType classify_h_operator(const AlmostParacontactStructure& s, const TensorField& h, const std::vector<Rational>& point) {
  require_3d(s);
  auto ev = [&](const ScalarField& f) {
    auto v = exact_value(f, point);
    if (!v) throw PreconditionError("h has no exact value at the point");
    return *v;
  };
  RationalMatrix hm(3, RationalVector(3));
  RationalVector eta(3), xi(3);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) hm[a][b] = ev(h(a, b));
    eta[a] = ev(s.eta(a));
    xi[a] = ev(s.xi(a));
  }
  // basis of ker eta and the matrix of h in it
  auto ker = nullspace(RationalMatrix{eta});
  if (ker.size() != 2) throw PreconditionError("eta vanishes at the point");
  RationalMatrix V(3, RationalVector(2));
  for (int a = 0; a < 3; ++a)
    for (int j = 0; j < 2; ++j) V[a][j] = ker[j][a];
  RationalMatrix M(2, RationalVector(2));
  for (int j = 0; j < 2; ++j) {
    RationalVector hv(3, Rational(0));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) hv[a] += hm[a][b] * ker[j][b];
    auto c = solve(V, hv);
    if (!c) throw PreconditionError("h does not preserve ker eta at the point");
    M[0][j] = (*c)[0];
    M[1][j] = (*c)[1];
  }
  HType t;
  t.point = point;
  t.det = M[0][0] * M[1][1] - M[0][1] * M[1][0];
  t.trace = M[0][0] + M[1][1];
  bool zero = true;
  for (const auto& row : hm)
    for (const auto& x : row) zero = zero && x == 0;
  if (zero) {
    t.tag = HTag::Zero;
  } else if (t.det < 0) {
    t.tag = HTag::H1;
    t.lambda2 = Rational(-t.det);
  } else if (t.det > 0) {
    t.tag = HTag::H3;
    t.lambda2 = t.det;
  } else {
    t.tag = HTag::H2;
  }
  return t;
}

HType classify_h(const AlmostParacontactStructure& s, const StructureAnalysis& an, const std::vector<Rational>& point) {
  require_3d(s);
  if (an.h.size() == 0) return classify_h_operator(s, lie_derivative(s.xi, s.phi) * Rational(1, 2), point);
  return classify_h_operator(s, an.h, point);
}

GridClassification classify_h_grid(const AlmostParacontactStructure& s, const StructureAnalysis& an) {
  require_3d(s);
  const std::vector<std::vector<Rational>> offsets = {
      {0, 0, 0},
      {Rational(1, 3), 0, 0},
      {0, Rational(1, 3), 0},
      {0, 0, Rational(1, 3)},
      {Rational(-1, 4), Rational(1, 5), 0},
      {Rational(1, 5), Rational(-1, 4), Rational(1, 7)},
  };
  GridClassification out;
  for (const auto& off : offsets) {
    std::vector<Rational> p = s.base_point;
    for (int i = 0; i < 3; ++i) p[i] += off[i];
    try {
      HType t = classify_h(s, an, p);
      if (!out.samples.empty() && t.tag != out.samples.front().tag) {
        out.warnings.push_back(std::string("tag changes from ") + htag_name(out.samples.front().tag) + " to " +
                               htag_name(t.tag) + " near the base point");
      }
      out.samples.push_back(t);
    } catch (const PreconditionError& e) {
      out.warnings.push_back(std::string("sample skipped: ") + e.what());
    } catch (const PoleError& e) {
      out.warnings.push_back(std::string("sample skipped: ") + e.what());
    }
  }
  return out;
}

HTemplate h1_template() {
  // h = diag(lambda, -lambda, 0), g = diag(-1, 1, 1)
  return {"h1",
          {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}},
          {{1, 0, 0}, {0, -1, 0}, {0, 0, 0}},
          {{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
}

HTemplate h2_template() {
  // h e1 = lambda e1 + e2, h e2 = lambda e2, h e3 = 0
  return {"h2",
          {{0, 0, 0}, {1, 0, 0}, {0, 0, 0}},
          {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}},
          {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}};
}

HTemplate h4_template() {
  // h e1 = lambda e1 + e3, h e2 = lambda e2, h e3 = e2 + lambda e3
  return {"h4",
          {{0, 0, 0}, {0, 0, 1}, {1, 0, 0}},
          {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
          {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}};
}

TemplateOutcome h_template_check(const HTemplate& t) {
  TemplateOutcome out;
  Rational tr0 = t.psi0[0][0] + t.psi0[1][1] + t.psi0[2][2];
  Rational tr1 = t.psi1[0][0] + t.psi1[1][1] + t.psi1[2][2];
  Rational lambda = 0;
  if (tr1 != 0) {
    lambda = -tr0 / tr1;
    out.lambda = lambda;
  } else if (tr0 != 0) {
    out.contradiction = true;
    out.detail = "tr h = 0 cannot hold";
    return out;
  }
  RationalMatrix psi(3, RationalVector(3));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) psi[a][b] = t.psi0[a][b] + lambda * t.psi1[a][b];
  out.kernel = nullspace(psi);
  const std::size_t k = out.kernel.size();
  out.kernel_gram.assign(k, RationalVector(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Rational s = 0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) s += out.kernel[i][a] * t.metric[a][b] * out.kernel[j][b];
      out.kernel_gram[i][j] = s;
    }
  // g(xi,xi) = 1 is solvable on the kernel iff the restricted form takes a positive value
  bool positive = false;
  if (k > 0) {
    auto ob = orthogonal_basis<Rational>(out.kernel_gram, [](const Rational& x) { return x == 0; });
    if (ob) {
      for (const auto& n : ob->second) positive = positive || n > 0;
    } else {
      // degenerate restriction: positive directions survive on a nondegenerate complement
      RationalMatrix gram = out.kernel_gram;
      for (std::size_t i = 0; i < k; ++i) positive = positive || gram[i][i] > 0;
      for (std::size_t i = 0; i < k && !positive; ++i)
        for (std::size_t j = i + 1; j < k; ++j) positive = positive || gram[i][j] != 0;
    }
  }
  out.contradiction = !positive;
  std::ostringstream os;
  os << "lambda = " << lambda.get_str() << ", dim ker h = " << k;
  if (out.contradiction) os << ", g(xi,xi) = 0 on ker h";
  out.detail = os.str();
  return out;
}

AdaptedFrame build_adapted_frame(const AlmostParacontactStructure& s, const StructureAnalysis& an,
                                 const HType& type) {
  require_3d(s);
  if (!an.is_apc()) throw PreconditionError("adapted frames require an almost alpha-paracosymplectic structure");
  Fields f = make_fields(s, an);
  AdaptedFrame out;
  out.tag = type.tag;
  out.point = type.point;
  out.kind = type.tag == HTag::H2 ? FrameKind::PseudoOrthonormal : FrameKind::OrthonormalPhi;
  out.eps = out.kind == FrameKind::PseudoOrthonormal ? std::vector<int>{0, 0, 1} : std::vector<int>{-1, 1, 1};
  try {
    auto p = load<Rational>(f, type.point);
    auto fr = frame_for(p, type);
    out.exact = true;
    std::vector<RationalVector> ev;
    for (int i = 0; i < 3; ++i) {
      ev.push_back(fr.v[i]);
      std::vector<double> d;
      for (const auto& x : fr.v[i]) d.push_back(x.get_d());
      out.vectors.push_back(d);
    }
    out.exact_vectors = ev;
    out.lambda = fr.lambda.get_d();
    if (type.tag == HTag::H1 || type.tag == HTag::H3) out.exact_lambda = fr.lambda;
    out.phi_sign = fr.phi_sign;
    out.h_sign = fr.h_sign;
    out.checks = frame_pattern(p, fr, type.tag);
    return out;
  } catch (const NotExact&) {
  }
  auto p = load<double>(f, type.point);
  auto fr = frame_for(p, type);
  for (int i = 0; i < 3; ++i) out.vectors.push_back(fr.v[i]);
  out.lambda = fr.lambda;
  out.phi_sign = fr.phi_sign;
  out.h_sign = fr.h_sign;
  out.checks = frame_pattern(p, fr, type.tag);
  return out;
}

FrameDerivativeTable verify_frame_tables(const AlmostParacontactStructure& s, const StructureAnalysis& an,
                                         const CurvatureData& cd, const AdaptedFrame& frame) {
  require_3d(s);
  require_constant_alpha(an);
  (void)cd;
  Fields f = make_fields(s, an);
  if (frame.exact) {
    auto p = load<Rational>(f, frame.point);
    return tables(f, p, frame_from<Rational>(frame), frame.tag, frame.point);
  }
  auto p = load<double>(f, frame.point);
  return tables(f, p, frame_from<double>(frame), frame.tag, frame.point);
}

CheckResult verify_ricci_formula(const AlmostParacontactStructure& s, const StructureAnalysis& an,
                                 const AdaptedFrame& frame, const TensorField& Q) {
  require_3d(s);
  require_constant_alpha(an);
  Fields f = make_fields(s, an);
  if (frame.exact) {
    try {
      auto p = load<Rational>(f, frame.point);
      return ricci_check(f, p, frame_from<Rational>(frame), frame.tag, Q, frame.point);
    } catch (const NotExact&) {
    }
  }
  auto p = load<double>(f, frame.point);
  return ricci_check(f, p, frame_from<double>(frame), frame.tag, Q, frame.point);
}

CheckResult verify_ricci_formula(const AlmostParacontactStructure& s, const StructureAnalysis& an,
                                 const AdaptedFrame& frame) {
  return verify_ricci_formula(s, an, frame, an.geo.ricci_op);
}

namespace {

template <class T>
void case_checks(HarmonicNullity& out, const AlmostParacontactStructure& s, const StructureAnalysis& an,
                 const NullityFit& fit, const FrameDerivativeTable& tab, const std::vector<Rational>& point) {
  auto ev = evaluator<T>(point);
  auto coef = [&](const std::string& k) -> T {
    if constexpr (std::is_same_v<T, Rational>) {
      return tab.exact_coefficients.at(k);
    } else {
      return tab.coefficients.at(k);
    }
  };
  const T alpha = ev(an.alpha_field());
  const T a2 = alpha * alpha;
  std::optional<T> kappa, mu, nu;
  std::string kname, mname, nname;
  switch (tab.tag) {
    case HTag::Zero:
      kappa = -a2;
      kname = "kappa = -alpha^2";
      break;
    case HTag::H1: {
      T lam = coef("lambda");
      kappa = lam * lam - a2;
      mu = T(-2) * coef("a1");
      nu = -(T(2) * alpha + coef("xi(lambda)") / lam);
      kname = "kappa = lambda^2 - alpha^2";
      mname = "mu = -2 a1";
      nname = "nu = -(2 alpha + xi(lambda)/lambda)";
      break;
    }
    case HTag::H2:
      kappa = -a2;
      mu = T(-2) * coef("s") * coef("a2");
      nu = T(-2) * alpha;
      kname = "kappa = -alpha^2";
      mname = "mu = -2 s a2";
      nname = "nu = -2 alpha";
      break;
    case HTag::H3: {
      T lam = coef("lambda");
      kappa = -(a2 + lam * lam);
      mu = T(-2) * coef("a3");
      nu = -(T(2) * alpha + coef("xi(lambda)") / lam);
      kname = "kappa = -(alpha^2 + lambda^2)";
      mname = "mu = -2 a3";
      nname = "nu = -(2 alpha + xi(lambda)/lambda)";
      break;
    }
  }
  out.case_values["kappa"] = to_d(*kappa);
  out.checks.push_back(scalar_check<T>(kname, ev(*fit.kappa), *kappa));
  if (!mu) return;
  out.case_values["mu"] = to_d(*mu);
  out.case_values["nu"] = to_d(*nu);
  if (!fit.mu) {
    out.checks.push_back(skipped(mname, "h = 0 identically leaves mu unconstrained"));
    out.checks.push_back(skipped(nname, "h = 0 identically leaves nu unconstrained"));
    return;
  }
  const T fm = ev(*fit.mu), fn = ev(*fit.nu);
  if (fit.unique) {
    out.checks.push_back(scalar_check<T>(mname, fm, *mu));
    out.checks.push_back(scalar_check<T>(nname, fn, *nu));
    return;
  }
  // h and phi h are dependent: compare the operators they build
  Mat<T> h = point_matrix<T>(an.h, point);
  Mat<T> ph = point_matrix<T>(an.phi_h, point);
  Mat<T> res = operator_combo<T>({{fm, &h}, {fn, &ph}, {T(-*mu), &h}, {T(-*nu), &ph}});
  out.checks.push_back(mat_check<T>(mname + ", " + nname + " as mu h + nu phi h", res, T(1)));
  (void)s;
}

}  // namespace

HarmonicNullity harmonic_nullity_equivalence(const AlmostParacontactStructure& s, const StructureAnalysis& an,
                                             const CurvatureData& cd, const NullityFit& fit) {
  require_3d(s);
  HarmonicNullity out;
  out.harmonic = xi_is_harmonic(s, cd);
  out.nullity = fit.status != NullityStatus::NotNullity;
  out.checks.push_back(check_flag("xi harmonic <=> (kappa,mu,nu)-nullity", out.harmonic == out.nullity,
                                  std::string("harmonic = ") + (out.harmonic ? "true" : "false") +
                                      ", nullity = " + (out.nullity ? "true" : "false")));
  const std::string case_name = "case formulas for (kappa,mu,nu)";
  if (!out.harmonic || !out.nullity) {
    out.checks.push_back(skipped(case_name, "xi is not harmonic"));
    return out;
  }
  if (!an.alpha.alpha_constant) {
    out.checks.push_back(skipped(case_name, "requires constant alpha"));
    return out;
  }
  HType t = classify_h(s, an, s.base_point);
  out.type = t;
  AdaptedFrame frame = build_adapted_frame(s, an, t);
  out.table = verify_frame_tables(s, an, cd, frame);
  if (out.table->exact) {
    case_checks<Rational>(out, s, an, fit, *out.table, s.base_point);
  } else {
    case_checks<double>(out, s, an, fit, *out.table, s.base_point);
  }
  return out;
}

}  // namespace paracos
