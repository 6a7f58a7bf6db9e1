#include "qhe/liouvillian.hpp"

#include <cmath>

#include "qhe/linalg.hpp"

namespace qhe {

namespace detail {

Mat4 dissipator(const Mat4& a, const Mat4& b, const Mat4& rho) {
  const Mat4 bd = b.dagger();
  const Mat4 bda = bd * a;
  return a * rho * bd - 0.5 * (bda * rho + rho * bda);
}

Mat4 commutator_action(const Mat4& v, const Mat4& rho) {
  return cplx(0.0, -1.0) * (v * rho - rho * v);
}

Mat4 drive_operator(const EngineParams& params) {
  Mat4 v;
  v(lvl_1, lvl_0) = params.lambda;
  v(lvl_2, lvl_0) = params.lambda;
  v(lvl_0, lvl_1) = params.lambda;
  v(lvl_0, lvl_2) = params.lambda;
  return v;
}

Mat4 generator_action(const EngineParams& params, const Mat4& rho) {
  const auto [n_c, n_h] = occupations(params);
  const Mat4 a_c = Mat4::ketbra(lvl_g, lvl_0);
  const Mat4 a_1 = Mat4::ketbra(lvl_g, lvl_1);
  const Mat4 a_2 = Mat4::ketbra(lvl_g, lvl_2);

  Mat4 out = commutator_action(drive_operator(params), rho);

  out += params.gamma_c * (n_c + 1.0) * dissipator(a_c, a_c, rho);
  out += params.gamma_c * n_c * dissipator(a_c.dagger(), a_c.dagger(), rho);

  for (const Mat4* a : {&a_1, &a_2}) {
    out += params.gamma_h * (n_h + 1.0) * dissipator(*a, *a, rho);
    out += params.gamma_h * n_h * dissipator(a->dagger(), a->dagger(), rho);
  }

  // common-bath cross terms between the degenerate branches
  const double gp = params.gamma_h * params.p;
  out += gp * (n_h + 1.0) * (dissipator(a_1, a_2, rho) + dissipator(a_2, a_1, rho));
  out += gp * n_h *
         (dissipator(a_1.dagger(), a_2.dagger(), rho) + dissipator(a_2.dagger(), a_1.dagger(), rho));
  return out;
}

}  // namespace detail

DensityMatrix equations_of_motion_rhs(const EngineParams& params, const DensityMatrix& rho) {
  const auto [n_c, n_h] = occupations(params);
  const double gc = params.gamma_c, gh = params.gamma_h, lam = params.lambda, p = params.p;

  const cplx r10 = rho(lvl_1, lvl_0), r20 = rho(lvl_2, lvl_0), r12 = rho(lvl_1, lvl_2);
  const cplx r01 = rho(lvl_0, lvl_1), r02 = rho(lvl_0, lvl_2), r21 = rho(lvl_2, lvl_1);
  const double r11 = rho(lvl_1, lvl_1).real();
  const double r22 = rho(lvl_2, lvl_2).real();
  const double r00 = rho(lvl_0, lvl_0).real();
  const double rgg = rho(lvl_g, lvl_g).real();
  const cplx i1(0.0, 1.0);

  const cplx d11 = i1 * lam * (r10 - r01) - gh * ((n_h + 1.0) * r11 - n_h * rgg) -
                   0.5 * p * gh * (n_h + 1.0) * (r12 + r21);
  const cplx d22 = i1 * lam * (r20 - r02) - gh * ((n_h + 1.0) * r22 - n_h * rgg) -
                   0.5 * p * gh * (n_h + 1.0) * (r12 + r21);
  const cplx d00 = i1 * lam * (r01 + r02 - r10 - r20) - gc * ((n_c + 1.0) * r00 - n_c * rgg);
  const cplx d12 = i1 * lam * (r10 - r02) - gh * (n_h + 1.0) * r12 -
                   0.5 * p * gh * ((n_h + 1.0) * (r11 + r22) - 2.0 * n_h * rgg);
  const double damp = 0.5 * (gc * (n_c + 1.0) + gh * (n_h + 1.0));
  const cplx d10 =
      i1 * lam * (r11 - r00 + r12) - damp * r10 - 0.5 * p * gh * (n_h + 1.0) * r20;
  const cplx d20 =
      i1 * lam * (r22 - r00 + r21) - damp * r20 - 0.5 * p * gh * (n_h + 1.0) * r10;

  DensityMatrix out;
  out(lvl_1, lvl_1) = d11;
  out(lvl_2, lvl_2) = d22;
  out(lvl_0, lvl_0) = d00;
  out(lvl_g, lvl_g) = -(d11 + d22 + d00);  // unit trace
  out(lvl_1, lvl_2) = d12;
  out(lvl_2, lvl_1) = std::conj(d12);
  out(lvl_1, lvl_0) = d10;
  out(lvl_0, lvl_1) = std::conj(d10);
  out(lvl_2, lvl_0) = d20;
  out(lvl_0, lvl_2) = std::conj(d20);

  // Ground-row coherences decouple from the tracked block and only decay;
  // included so the right-hand side is complete for arbitrary Hermitian input.
  const cplx rg0 = rho(lvl_g, lvl_0), rg1 = rho(lvl_g, lvl_1), rg2 = rho(lvl_g, lvl_2);
  const cplx dg0 = i1 * lam * (rg1 + rg2) -
                   (0.5 * gc * (2.0 * n_c + 1.0) + gh * n_h) * rg0;
  const double gdecay = 0.5 * gc * n_c + 0.5 * gh * (n_h + 1.0) + gh * n_h;
  const cplx dg1 = i1 * lam * rg0 - gdecay * rg1 - 0.5 * p * gh * (n_h + 1.0) * rg2;
  const cplx dg2 = i1 * lam * rg0 - gdecay * rg2 - 0.5 * p * gh * (n_h + 1.0) * rg1;
  out(lvl_g, lvl_0) = dg0;
  out(lvl_0, lvl_g) = std::conj(dg0);
  out(lvl_g, lvl_1) = dg1;
  out(lvl_1, lvl_g) = std::conj(dg1);
  out(lvl_g, lvl_2) = dg2;
  out(lvl_2, lvl_g) = std::conj(dg2);
  return out;
}

ReducedSystem reduced_system(const EngineParams& params) {
  const auto [n_c, n_h] = occupations(params);
  const double gc = params.gamma_c, gh = params.gamma_h, lam = params.lambda, p = params.p;
  const double hp = (n_h + 1.0) * gh;        // hot decay weight
  const double hx = 0.5 * p * gh * (n_h + 1.0);  // cross-coupling weight
  const double damp = 0.5 * (gc * (n_c + 1.0) + hp);

  // unknown order: rho11, rho22, rho00, Re12, Im12, Re10, Im10, Re20, Im20
  enum { R11, R22, R00, RE12, IM12, RE10, IM10, RE20, IM20 };
  ReducedSystem sys;
  auto A = [&sys](int r, int c) -> double& { return sys.matrix[9 * r + c]; };
  auto B = [&sys](int r) -> double& { return sys.rhs[r]; };
  // rho_gg = 1 - rho11 - rho22 - rho00 is substituted; terms c*rho_gg become
  // -c on the three populations and -c on the right-hand side.

  // d rho11 = -2 lam Im10 - hp rho11 + gh n_h rho_gg - 2 hx Re12 = 0
  A(0, R11) = -hp - gh * n_h;
  A(0, R22) = -gh * n_h;
  A(0, R00) = -gh * n_h;
  A(0, RE12) = -2.0 * hx;
  A(0, IM10) = -2.0 * lam;
  B(0) = -gh * n_h;

  // d rho22 = -2 lam Im20 - hp rho22 + gh n_h rho_gg - 2 hx Re12 = 0
  A(1, R22) = -hp - gh * n_h;
  A(1, R11) = -gh * n_h;
  A(1, R00) = -gh * n_h;
  A(1, RE12) = -2.0 * hx;
  A(1, IM20) = -2.0 * lam;
  B(1) = -gh * n_h;

  // d rho00 = 2 lam (Im10 + Im20) - gc (n_c+1) rho00 + gc n_c rho_gg = 0
  A(2, R00) = -gc * (n_c + 1.0) - gc * n_c;
  A(2, R11) = -gc * n_c;
  A(2, R22) = -gc * n_c;
  A(2, IM10) = 2.0 * lam;
  A(2, IM20) = 2.0 * lam;
  B(2) = -gc * n_c;

  // Re d rho12 = -lam (Im10 + Im20) - hp Re12 - hx (rho11 + rho22) + p gh n_h rho_gg = 0
  A(3, RE12) = -hp;
  A(3, R11) = -hx - p * gh * n_h;
  A(3, R22) = -hx - p * gh * n_h;
  A(3, R00) = -p * gh * n_h;
  A(3, IM10) = -lam;
  A(3, IM20) = -lam;
  B(3) = -p * gh * n_h;

  // Im d rho12 = lam (Re10 - Re20) - hp Im12 = 0
  A(4, IM12) = -hp;
  A(4, RE10) = lam;
  A(4, RE20) = -lam;

  // Re d rho10 = -lam Im12 - damp Re10 - hx Re20 = 0
  A(5, RE10) = -damp;
  A(5, RE20) = -hx;
  A(5, IM12) = -lam;

  // Im d rho10 = lam (rho11 - rho00 + Re12) - damp Im10 - hx Im20 = 0
  A(6, IM10) = -damp;
  A(6, IM20) = -hx;
  A(6, R11) = lam;
  A(6, R00) = -lam;
  A(6, RE12) = lam;

  // Re d rho20 = lam Im12 - damp Re20 - hx Re10 = 0
  A(7, RE20) = -damp;
  A(7, RE10) = -hx;
  A(7, IM12) = lam;

  // Im d rho20 = lam (rho22 - rho00 + Re12) - damp Im20 - hx Im10 = 0
  A(8, IM20) = -damp;
  A(8, IM10) = -hx;
  A(8, R22) = lam;
  A(8, R00) = -lam;
  A(8, RE12) = lam;

  return sys;
}

namespace {

double full_residual(const EngineParams& params, const DensityMatrix& rho) {
  const Mat4 d = detail::generator_action(params, rho.rho);
  double r = 0.0;
  for (const auto& v : d.m) r = std::max(r, std::abs(v));
  return r;
}

}  // namespace

SteadyStateSolution solve_steady_reduced(const EngineParams& params) {
  const ReducedSystem sys = reduced_system(params);
  std::vector<double> a(sys.matrix.begin(), sys.matrix.end());
  std::vector<double> b(sys.rhs.begin(), sys.rhs.end());
  const double cond = condition_1norm(a, 9);
  if (!(cond < 1e14))
    throw solver_error("solve_steady_reduced: system too ill-conditioned (cond~" +
                       std::to_string(cond) + ") at " + describe(params));
  if (!lu_solve(a, b, 9))
    throw solver_error("solve_steady_reduced: singular system at " + describe(params));

  SteadyStateSolution sol;
  sol.method = SteadyMethod::reduced;
  sol.condition = cond;
  DensityMatrix& s = sol.state;
  s(lvl_1, lvl_1) = b[0];
  s(lvl_2, lvl_2) = b[1];
  s(lvl_0, lvl_0) = b[2];
  s(lvl_g, lvl_g) = 1.0 - b[0] - b[1] - b[2];
  s(lvl_1, lvl_2) = cplx(b[3], b[4]);
  s(lvl_2, lvl_1) = cplx(b[3], -b[4]);
  s(lvl_1, lvl_0) = cplx(b[5], b[6]);
  s(lvl_0, lvl_1) = cplx(b[5], -b[6]);
  s(lvl_2, lvl_0) = cplx(b[7], b[8]);
  s(lvl_0, lvl_2) = cplx(b[7], -b[8]);
  sol.residual = full_residual(params, sol.state);
  return sol;
}

std::array<double, 16> hermitian_coordinates(const DensityMatrix& rho) {
  std::array<double, 16> v{};
  int k = 0;
  for (int i = 0; i < 4; ++i) v[k++] = rho(i, i).real();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      v[k++] = rho(i, j).real();
      v[k++] = rho(i, j).imag();
    }
  return v;
}

DensityMatrix from_hermitian_coordinates(const std::array<double, 16>& v) {
  DensityMatrix rho;
  int k = 0;
  for (int i = 0; i < 4; ++i) rho(i, i) = v[k++];
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const double re = v[k++], im = v[k++];
      rho(i, j) = cplx(re, im);
      rho(j, i) = cplx(re, -im);
    }
  return rho;
}

Liouvillian full_liouvillian(const EngineParams& params) {
  Liouvillian l;
  // column k = coordinates of L[basis_k]; the generator maps Hermitian to
  // Hermitian, so the embedding is real.
  for (int k = 0; k < 16; ++k) {
    std::array<double, 16> e{};
    e[k] = 1.0;
    const DensityMatrix basis = from_hermitian_coordinates(e);
    const Mat4 image = detail::generator_action(params, basis.rho);
    DensityMatrix im;
    im.rho = image;
    const auto col = hermitian_coordinates(im);
    for (int r = 0; r < 16; ++r) l.matrix[16 * r + k] = col[r];
  }
  return l;
}

DensityMatrix Liouvillian::apply(const DensityMatrix& rho) const {
  const auto v = hermitian_coordinates(rho);
  std::array<double, 16> out{};
  for (int r = 0; r < 16; ++r) {
    double s = 0.0;
    for (int c = 0; c < 16; ++c) s += matrix[16 * r + c] * v[c];
    out[r] = s;
  }
  return from_hermitian_coordinates(out);
}

SteadyStateSolution solve_steady_full(const EngineParams& params) {
  const Liouvillian l = full_liouvillian(params);
  std::vector<double> a(l.matrix.begin(), l.matrix.end());
  // trace row replaces the first equation
  for (int c = 0; c < 16; ++c) a[c] = (c < 4) ? 1.0 : 0.0;
  std::vector<double> b(16, 0.0);
  b[0] = 1.0;
  const double cond = condition_1norm(a, 16);
  if (!(cond < 1e14))
    throw degenerate_steady_state(
        "solve_steady_full: generator has extra null direction or near-degeneracy (cond~" +
        std::to_string(cond) + ") at " + describe(params));
  if (!lu_solve(a, b, 16))
    throw degenerate_steady_state("solve_steady_full: singular system at " + describe(params));

  std::array<double, 16> v{};
  for (int i = 0; i < 16; ++i) v[i] = b[i];
  SteadyStateSolution sol;
  sol.method = SteadyMethod::full;
  sol.condition = cond;
  sol.state = from_hermitian_coordinates(v);
  sol.residual = full_residual(params, sol.state);
  return sol;
}

EvolveResult evolve(const EngineParams& params, const DensityMatrix& rho0, double horizon,
                    double step) {
  if (!(step > 0.0) || !(horizon >= step))
    throw domain_error("evolve: requires step > 0 and horizon >= step");
  if (rho0.hermiticity_defect() > 1e-10 || rho0.trace_defect() > 1e-10 ||
      rho0.min_eigenvalue() < -1e-8)
    throw inconsistent_state_error("evolve: initial state violates density-matrix invariants");

  const Liouvillian l = full_liouvillian(params);
  auto deriv = [&l](const std::array<double, 16>& v) {
    std::array<double, 16> out{};
    for (int r = 0; r < 16; ++r) {
      double s = 0.0;
      for (int c = 0; c < 16; ++c) s += l.matrix[16 * r + c] * v[c];
      out[r] = s;
    }
    return out;
  };

  const long nsteps = static_cast<long>(std::ceil(horizon / step - 1e-12));
  const long stride = std::max<long>(1, nsteps / 512);

  EvolveResult result;
  result.sample_dt = stride * step;
  std::array<double, 16> v = hermitian_coordinates(rho0);
  result.states.push_back(from_hermitian_coordinates(v));

  for (long n = 0; n < nsteps; ++n) {
    const auto k1 = deriv(v);
    std::array<double, 16> tmp{};
    for (int i = 0; i < 16; ++i) tmp[i] = v[i] + 0.5 * step * k1[i];
    const auto k2 = deriv(tmp);
    for (int i = 0; i < 16; ++i) tmp[i] = v[i] + 0.5 * step * k2[i];
    const auto k3 = deriv(tmp);
    for (int i = 0; i < 16; ++i) tmp[i] = v[i] + step * k3[i];
    const auto k4 = deriv(tmp);
    for (int i = 0; i < 16; ++i)
      v[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    const double tr = v[0] + v[1] + v[2] + v[3];
    if (std::abs(tr - 1.0) > 1e-6)
      throw step_size_error("evolve: trace drifted beyond 1e-6 at t=" +
                            std::to_string((n + 1) * step) + "; refine the step");
    if ((n + 1) % (50 * stride) == 0 &&
        from_hermitian_coordinates(v).min_eigenvalue() < -1e-6)
      throw step_size_error("evolve: state lost positivity beyond 1e-6 at t=" +
                            std::to_string((n + 1) * step) + "; refine the step");
    if ((n + 1) % stride == 0 || n + 1 == nsteps)
      result.states.push_back(from_hermitian_coordinates(v));
  }
  return result;
}

}  // namespace qhe
