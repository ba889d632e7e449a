#include "cvples/sgs.hpp"

#include <cmath>

#include "cvples/error.hpp"
#include "cvples/reduce.hpp"

namespace cvples {

SgsModel sgs_model_from_string(const std::string& s) {
  if (s == "none") return SgsModel::none;
  if (s == "smagorinsky") return SgsModel::smagorinsky;
  if (s == "structure_function") return SgsModel::structure_function;
  if (s == "vreman") return SgsModel::vreman;
  if (s == "dynamic") return SgsModel::dynamic_smagorinsky;
  fail(errc::bad_value,
       "unknown sgs model '" + s + "' (none, smagorinsky, structure_function, vreman, dynamic)");
}

const char* to_string(SgsModel m) {
  switch (m) {
    case SgsModel::none: return "none";
    case SgsModel::smagorinsky: return "smagorinsky";
    case SgsModel::structure_function: return "structure_function";
    case SgsModel::vreman: return "vreman";
    default: return "dynamic";
  }
}

void strain_rate(const TensorField& grad_u, StrainRate& out) {
  const Grid& g = grad_u.grid();
  const std::size_t n = g.size();
  const double* du[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) du[i][j] = grad_u.comp(i, j).data();
  double* s[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s[i][j] = out.s.comp(i, j).data();
  double* mag = out.mag.data();

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(n); ++m) {
    const double div3 = (du[0][0][m] + du[1][1][m] + du[2][2][m]) / 3.0;
    const double s00 = du[0][0][m] - div3;
    const double s11 = du[1][1][m] - div3;
    const double s22 = du[2][2][m] - div3;
    const double s01 = 0.5 * (du[0][1][m] + du[1][0][m]);
    const double s02 = 0.5 * (du[0][2][m] + du[2][0][m]);
    const double s12 = 0.5 * (du[1][2][m] + du[2][1][m]);
    s[0][0][m] = s00;
    s[1][1][m] = s11;
    s[2][2][m] = s22;
    s[0][1][m] = s01;
    s[1][0][m] = s01;
    s[0][2][m] = s02;
    s[2][0][m] = s02;
    s[1][2][m] = s12;
    s[2][1][m] = s12;
    mag[m] = std::sqrt(s00 * s00 + s11 * s11 + s22 * s22 +
                       2.0 * (s01 * s01 + s02 * s02 + s12 * s12));
  }
}

StrainRate strain_rate(const TensorField& grad_u) {
  StrainRate out(grad_u.grid());
  strain_rate(grad_u, out);
  return out;
}

StrainRate strain_rate(const Derivatives& der, const VectorField& u) {
  return strain_rate(der.gradient(u));
}

void mut_smagorinsky(const ScalarField& rho, const StrainRate& strain, const SgsModelConfig& cfg,
                     ScalarField& out) {
  const Grid& g = rho.grid();
  const double csd = cfg.cs * g.delta_bar();
  const double coef = csd * csd;
  const std::size_t n = g.size();
  const double* r = rho.data();
  const double* mag = strain.mag.data();
  double* o = out.data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(n); ++m) o[m] = r[m] * coef * mag[m];
}

void mut_structure_function(const ScalarField& rho, const VectorField& u,
                            const SgsModelConfig& cfg, ScalarField& out) {
  const Grid& g = rho.grid();
  if (!g.isotropic())
    fail(errc::anisotropic_grid, "structure-function model needs dx = dy = dz");
  const double coef = 0.105 * std::pow(cfg.ck, -1.5) * g.dx;
  const double* uc[3] = {u.x().data(), u.y().data(), u.z().data()};
  const double* r = rho.data();
  double* o = out.data();

#pragma omp parallel for schedule(static)
  for (int k = 0; k < g.nz; ++k) {
    const int km = Grid::wrap(k - 1, g.nz), kp = Grid::wrap(k + 1, g.nz);
    for (int j = 0; j < g.ny; ++j) {
      const int jm = Grid::wrap(j - 1, g.ny), jp = Grid::wrap(j + 1, g.ny);
      for (int i = 0; i < g.nx; ++i) {
        const int im = Grid::wrap(i - 1, g.nx), ip = Grid::wrap(i + 1, g.nx);
        const std::size_t c = g.idx(i, j, k);
        const std::size_t nb[6] = {g.idx(im, j, k), g.idx(ip, j, k), g.idx(i, jm, k),
                                   g.idx(i, jp, k), g.idx(i, j, km), g.idx(i, j, kp)};
        double f2 = 0.0;
        for (const std::size_t q : nb) {
          for (int c3 = 0; c3 < 3; ++c3) {
            const double d = uc[c3][q] - uc[c3][c];
            f2 += d * d;
          }
        }
        f2 /= 6.0;
        o[c] = r[c] * coef * std::sqrt(f2);
      }
    }
  }
}

void mut_vreman(const ScalarField& rho, const TensorField& grad_u, const SgsModelConfig& cfg,
                ScalarField& out) {
  const Grid& g = rho.grid();
  const double c = cfg.vreman_constant();
  const double d2[3] = {g.dx * g.dx, g.dy * g.dy, g.dz * g.dz};
  const std::size_t n = g.size();
  const double* du[3][3];
  // alpha_ij = du_j/dx_i, the transpose of the stored gradient convention
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) du[i][j] = grad_u.comp(j, i).data();
  const double* r = rho.data();
  double* o = out.data();

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(n); ++m) {
    double a[3][3], aa = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        a[i][j] = du[i][j][m];
        aa += a[i][j] * a[i][j];
      }
    if (aa <= cfg.eps_den) {
      o[m] = 0.0;
      continue;
    }
    double b[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        b[i][j] = d2[0] * a[0][i] * a[0][j] + d2[1] * a[1][i] * a[1][j] + d2[2] * a[2][i] * a[2][j];
    double bb = b[0][0] * b[1][1] - b[0][1] * b[0][1] + b[0][0] * b[2][2] - b[0][2] * b[0][2] +
                b[1][1] * b[2][2] - b[1][2] * b[1][2];
    if (bb < 0.0) bb = 0.0;  // roundoff
    o[m] = r[m] * c * std::sqrt(bb / aa);
  }
}

double mut_dynamic_smagorinsky(const ScalarField& rho, const VectorField& u,
                               const StrainRate& strain, const TestFilter& filter,
                               const SgsModelConfig& cfg, ScalarField& out) {
  const Grid& g = rho.grid();
  const std::size_t n = g.size();
  const double delta = g.delta_bar();
  const double rd = filter.spec().width_ratio();
  const double d2 = delta * delta;
  const double dhat2 = rd * rd * d2;

  // hat(rho), hat(rho u_i): 4 applications
  ScalarField rho_h = filter.apply(rho);
  VectorField mom_h(g), mom(g);
  for (int c = 0; c < 3; ++c) {
    ScalarField& mc = mom.comp(c);
    const double* uc = u.comp(c).data();
    const double* r = rho.data();
    for (std::size_t m = 0; m < n; ++m) mc[m] = r[m] * uc[m];
    filter.apply(mom.comp(c), mom_h.comp(c));
  }

  // L_ij = hat(rho u_i u_j) - hat(rho u_i) hat(rho u_j) / hat(rho): 6 applications
  TensorField lt(g);
  {
    ScalarField work(g);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        const double* r = rho.data();
        const double* ui = u.comp(i).data();
        const double* uj = u.comp(j).data();
        for (std::size_t m = 0; m < n; ++m) work[m] = r[m] * ui[m] * uj[m];
        filter.apply(work, lt.comp(i, j));
        const double* mi = mom_h.comp(i).data();
        const double* mj = mom_h.comp(j).data();
        const double* rh = rho_h.data();
        double* l = lt.comp(i, j).data();
        for (std::size_t m = 0; m < n; ++m) l[m] -= mi[m] * mj[m] / rh[m];
      }
  }

  // Test-filtered strain: the deviatoric tensor is traceless, so filtering the
  // five independent components reconstructs the sixth: 5 applications.
  TensorField s_h(g);
  filter.apply(strain.s.comp(0, 0), s_h.comp(0, 0));
  filter.apply(strain.s.comp(1, 1), s_h.comp(1, 1));
  filter.apply(strain.s.comp(0, 1), s_h.comp(0, 1));
  filter.apply(strain.s.comp(0, 2), s_h.comp(0, 2));
  filter.apply(strain.s.comp(1, 2), s_h.comp(1, 2));
  {
    const double* s00 = s_h.comp(0, 0).data();
    const double* s11 = s_h.comp(1, 1).data();
    double* s22 = s_h.comp(2, 2).data();
    for (std::size_t m = 0; m < n; ++m) s22[m] = -s00[m] - s11[m];
  }

  // hat(rho |S| S_ij): 6 applications
  TensorField rss_h(g);
  {
    ScalarField work(g);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        const double* r = rho.data();
        const double* mag = strain.mag.data();
        const double* sij = strain.s.comp(i, j).data();
        for (std::size_t m = 0; m < n; ++m) work[m] = r[m] * mag[m] * sij[m];
        filter.apply(work, rss_h.comp(i, j));
      }
  }

  // M_ij and the volume-averaged Germano contractions
  std::vector<double> lm_part(g.nz, 0.0), mm_part(g.nz, 0.0);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < g.nz; ++k) {
    double lm = 0.0, mm = 0.0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const std::size_t m = g.idx(i, j, k);
        double sh[3][3];
        sh[0][0] = s_h.comp(0, 0)[m];
        sh[1][1] = s_h.comp(1, 1)[m];
        sh[2][2] = s_h.comp(2, 2)[m];
        sh[0][1] = sh[1][0] = s_h.comp(0, 1)[m];
        sh[0][2] = sh[2][0] = s_h.comp(0, 2)[m];
        sh[1][2] = sh[2][1] = s_h.comp(1, 2)[m];
        double smag = 0.0;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) smag += sh[a][b] * sh[a][b];
        smag = std::sqrt(smag);
        const double rh = rho_h[m];
        for (int a = 0; a < 3; ++a)
          for (int b = a; b < 3; ++b) {
            const double mij = -2.0 * dhat2 * rh * smag * sh[a][b] +
                               2.0 * d2 * rss_h.comp(a, b)[m];
            const double lij = lt.comp(a, b)[m];
            const double wgt = (a == b) ? 1.0 : 2.0;  // symmetric off-diagonal pairs
            lm += wgt * lij * mij;
            mm += wgt * mij * mij;
          }
      }
    lm_part[k] = lm;
    mm_part[k] = mm;
  }
  const double lm_avg = pairwise_sum(lm_part) / double(n);
  const double mm_avg = pairwise_sum(mm_part) / double(n);

  double cd = 0.0;
  if (mm_avg > cfg.eps_den) cd = lm_avg / mm_avg;
  if (cd < cfg.dynamic_floor) cd = cfg.dynamic_floor;

  const double* r = rho.data();
  const double* mag = strain.mag.data();
  double* o = out.data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(n); ++m) o[m] = r[m] * cd * mag[m];
  return cd;
}

}  // namespace cvples
