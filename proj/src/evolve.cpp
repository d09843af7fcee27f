#include "zeno/evolve.hpp"

#include "zeno/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

namespace zeno {

StateVector StateVector::basis_state(const BasisSet &basis, const BasisState &state, double time) {
  StateVector psi{Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size())), time};
  psi.amplitudes(static_cast<Eigen::Index>(basis.at(state))) = 1.0;
  return psi;
}

std::string_view to_string(Method method) noexcept {
  return method == Method::adaptive_rk ? "adaptive_rk" : "expm_oracle";
}

std::string_view to_string(RkScheme scheme) noexcept {
  return scheme == RkScheme::dopri5 ? "dopri5" : "dop853";
}

Method parse_method(std::string_view name) {
  if (name == "adaptive_rk") return Method::adaptive_rk;
  if (name == "expm_oracle") return Method::expm_oracle;
  throw ConfigError("unknown integrator method '" + std::string(name) + "' (expected adaptive_rk|expm_oracle)");
}

RkScheme parse_rk_scheme(std::string_view name) {
  if (name == "dopri5") return RkScheme::dopri5;
  if (name == "dop853") return RkScheme::dop853;
  throw ConfigError("unknown Runge-Kutta scheme '" + std::string(name) + "' (expected dopri5|dop853)");
}

void IntegratorConfig::validate() const {
  if (!(rtol > 0.0) || !(atol > 0.0)) throw ConfigError("integrator tolerances must be > 0");
  if (max_step < 0.0) throw ConfigError("integrator max_step must be >= 0");
  if (!(norm_drift_bound > 0.0)) throw ConfigError("integrator norm_drift_bound must be > 0");
  if (oracle_steps < 1) throw ConfigError("integrator oracle_steps must be >= 1");
}

namespace {

using Vec = Eigen::VectorXcd;
constexpr complex minus_i{0.0, -1.0};

/// f(t, y) = -i H_block(t) y.
class BlockRhs {
public:
  BlockRhs(const HamiltonianModel &model, const ExcitationBlock &block) : model_(model), block_(block) {}

  void operator()(double t, const Vec &y, Vec &dy) {
    block_.assemble(model_.couplings(t), h_);
    dy.noalias() = h_ * y;
    dy *= minus_i;
  }

private:
  const HamiltonianModel &model_;
  const ExcitationBlock &block_;
  Eigen::MatrixXd h_;
};

double scaled_rms(const Vec &err, const Vec &y0, const Vec &y1, double atol, double rtol) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    double sk = atol + rtol * std::max(std::abs(y0(i)), std::abs(y1(i)));
    acc += std::norm(err(i)) / (sk * sk);
  }
  return std::sqrt(acc / static_cast<double>(err.size()));
}

// Dormand-Prince 5(4) with FSAL.
struct Dopri5 {
  static constexpr double error_exponent = 0.2;
  static constexpr double beta = 0.04;
  static constexpr double fac_min = 0.2;
  static constexpr double fac_max = 10.0;
  static constexpr bool fsal = true;

  std::array<Vec, 7> k;
  Vec tmp, err;

  explicit Dopri5(Eigen::Index n) {
    for (auto &v : k) v.resize(n);
    tmp.resize(n);
    err.resize(n);
  }

  Vec &first() { return k[0]; }

  /// Advances y by h into y_new (k[0] must hold f(t, y)); returns the scaled error.
  template <class Rhs>
  double step(Rhs &f, double t, const Vec &y, double h, Vec &y_new, double atol, double rtol) {
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                     a76 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;

    tmp = y + h * a21 * k[0];
    f(t + c2 * h, tmp, k[1]);
    tmp = y + h * (a31 * k[0] + a32 * k[1]);
    f(t + c3 * h, tmp, k[2]);
    tmp = y + h * (a41 * k[0] + a42 * k[1] + a43 * k[2]);
    f(t + c4 * h, tmp, k[3]);
    tmp = y + h * (a51 * k[0] + a52 * k[1] + a53 * k[2] + a54 * k[3]);
    f(t + c5 * h, tmp, k[4]);
    tmp = y + h * (a61 * k[0] + a62 * k[1] + a63 * k[2] + a64 * k[3] + a65 * k[4]);
    f(t + h, tmp, k[5]);
    y_new = y + h * (a71 * k[0] + a73 * k[2] + a74 * k[3] + a75 * k[4] + a76 * k[5]);
    f(t + h, y_new, k[6]);
    err = h * (e1 * k[0] + e3 * k[2] + e4 * k[3] + e5 * k[4] + e6 * k[5] + e7 * k[6]);
    return scaled_rms(err, y, y_new, atol, rtol);
  }

  /// f(t + h, y_new) for the next step's first stage.
  template <class Rhs>
  void advance(Rhs &, double, const Vec &) {
    std::swap(k[0], k[6]);
  }
};

// Dormand-Prince 8(5,3): eighth-order solution, error from the combined
// fifth- and third-order estimators.
struct Dop853 {
  static constexpr double error_exponent = 1.0 / 8;
  static constexpr double beta = 0.04;
  static constexpr double fac_min = 1.0 / 3;
  static constexpr double fac_max = 6.0;
  static constexpr bool fsal = false;

  std::array<Vec, 12> k;
  Vec tmp, kb, err5, err3;

  explicit Dop853(Eigen::Index n) {
    for (auto &v : k) v.resize(n);
    tmp.resize(n);
    kb.resize(n);
    err5.resize(n);
    err3.resize(n);
  }

  Vec &first() { return k[0]; }

  template <class Rhs>
  double step(Rhs &f, double t, const Vec &y, double h, Vec &y_new, double atol, double rtol) {
    constexpr double c2 = 0.526001519587677318785587544488E-01, c3 = 0.789002279381515978178381316732E-01,
                     c4 = 0.118350341907227396726757197510E+00, c5 = 0.281649658092772603273242802490E+00,
                     c6 = 0.333333333333333333333333333333E+00, c7 = 0.25E+00,
                     c8 = 0.307692307692307692307692307692E+00, c9 = 0.651282051282051282051282051282E+00,
                     c10 = 0.6E+00, c11 = 0.857142857142857142857142857142E+00;

    constexpr double b1 = 5.42937341165687622380535766363E-2, b6 = 4.45031289275240888144113950566E0,
                     b7 = 1.89151789931450038304281599044E0, b8 = -5.8012039600105847814672114227E0,
                     b9 = 3.1116436695781989440891606237E-1, b10 = -1.52160949662516078556178806805E-1,
                     b11 = 2.01365400804030348374776537501E-1, b12 = 4.47106157277725905176885569043E-2;

    constexpr double bhh1 = 0.244094488188976377952755905512E+00, bhh2 = 0.733846688281611857341361741547E+00,
                     bhh3 = 0.220588235294117647058823529412E-01;

    constexpr double er1 = 0.1312004499419488073250102996E-01, er6 = -0.1225156446376204440720569753E+01,
                     er7 = -0.4957589496572501915214079952E+00, er8 = 0.1664377182454986536961530415E+01,
                     er9 = -0.3503288487499736816886487290E+00, er10 = 0.3341791187130174790297318841E+00,
                     er11 = 0.8192320648511571246570742613E-01, er12 = -0.2235530786388629525884427845E-01;

    constexpr double a21 = 5.26001519587677318785587544488E-2;
    constexpr double a31 = 1.97250569845378994544595329183E-2, a32 = 5.91751709536136983633785987549E-2;
    constexpr double a41 = 2.95875854768068491816892993775E-2, a43 = 8.87627564304205475450678981324E-2;
    constexpr double a51 = 2.41365134159266685502369798665E-1, a53 = -8.84549479328286085344864962717E-1,
                     a54 = 9.24834003261792003115737966543E-1;
    constexpr double a61 = 3.7037037037037037037037037037E-2, a64 = 1.70828608729473871279604482173E-1,
                     a65 = 1.25467687566822425016691814123E-1;
    constexpr double a71 = 3.7109375E-2, a74 = 1.70252211019544039314978060272E-1,
                     a75 = 6.02165389804559606850219397283E-2, a76 = -1.7578125E-2;
    constexpr double a81 = 3.70920001185047927108779319836E-2, a84 = 1.70383925712239993810214054705E-1,
                     a85 = 1.07262030446373284651809199168E-1, a86 = -1.53194377486244017527936158236E-2,
                     a87 = 8.27378916381402288758473766002E-3;
    constexpr double a91 = 6.24110958716075717114429577812E-1, a94 = -3.36089262944694129406857109825E0,
                     a95 = -8.68219346841726006818189891453E-1, a96 = 2.75920996994467083049415600797E1,
                     a97 = 2.01540675504778934086186788979E1, a98 = -4.34898841810699588477366255144E1;
    constexpr double a101 = 4.77662536438264365890433908527E-1, a104 = -2.48811461997166764192642586468E0,
                     a105 = -5.90290826836842996371446475743E-1, a106 = 2.12300514481811942347288949897E1,
                     a107 = 1.52792336328824235832596922938E1, a108 = -3.32882109689848629194453265587E1,
                     a109 = -2.03312017085086261358222928593E-2;
    constexpr double a111 = -9.3714243008598732571704021658E-1, a114 = 5.18637242884406370830023853209E0,
                     a115 = 1.09143734899672957818500254654E0, a116 = -8.14978701074692612513997267357E0,
                     a117 = -1.85200656599969598641566180701E1, a118 = 2.27394870993505042818970056734E1,
                     a119 = 2.49360555267965238987089396762E0, a1110 = -3.0467644718982195003823669022E0;
    constexpr double a121 = 2.27331014751653820792359768449E0, a124 = -1.05344954667372501984066689879E1,
                     a125 = -2.00087205822486249909675718444E0, a126 = -1.79589318631187989172765950534E1,
                     a127 = 2.79488845294199600508499808837E1, a128 = -2.85899827713502369474065508674E0,
                     a129 = -8.87285693353062954433549289258E0, a1210 = 1.23605671757943030647266201528E1,
                     a1211 = 6.43392746015763530355970484046E-1;

    tmp = y + h * a21 * k[0];
    f(t + c2 * h, tmp, k[1]);
    tmp = y + h * (a31 * k[0] + a32 * k[1]);
    f(t + c3 * h, tmp, k[2]);
    tmp = y + h * (a41 * k[0] + a43 * k[2]);
    f(t + c4 * h, tmp, k[3]);
    tmp = y + h * (a51 * k[0] + a53 * k[2] + a54 * k[3]);
    f(t + c5 * h, tmp, k[4]);
    tmp = y + h * (a61 * k[0] + a64 * k[3] + a65 * k[4]);
    f(t + c6 * h, tmp, k[5]);
    tmp = y + h * (a71 * k[0] + a74 * k[3] + a75 * k[4] + a76 * k[5]);
    f(t + c7 * h, tmp, k[6]);
    tmp = y + h * (a81 * k[0] + a84 * k[3] + a85 * k[4] + a86 * k[5] + a87 * k[6]);
    f(t + c8 * h, tmp, k[7]);
    tmp = y + h * (a91 * k[0] + a94 * k[3] + a95 * k[4] + a96 * k[5] + a97 * k[6] + a98 * k[7]);
    f(t + c9 * h, tmp, k[8]);
    tmp = y + h * (a101 * k[0] + a104 * k[3] + a105 * k[4] + a106 * k[5] + a107 * k[6] + a108 * k[7] +
                   a109 * k[8]);
    f(t + c10 * h, tmp, k[9]);
    tmp = y + h * (a111 * k[0] + a114 * k[3] + a115 * k[4] + a116 * k[5] + a117 * k[6] + a118 * k[7] +
                   a119 * k[8] + a1110 * k[9]);
    f(t + c11 * h, tmp, k[10]);
    tmp = y + h * (a121 * k[0] + a124 * k[3] + a125 * k[4] + a126 * k[5] + a127 * k[6] + a128 * k[7] +
                   a129 * k[8] + a1210 * k[9] + a1211 * k[10]);
    f(t + h, tmp, k[11]);

    kb = b1 * k[0] + b6 * k[5] + b7 * k[6] + b8 * k[7] + b9 * k[8] + b10 * k[9] + b11 * k[10] + b12 * k[11];
    y_new = y + h * kb;

    err3 = kb - bhh1 * k[0] - bhh2 * k[8] - bhh3 * k[11];
    err5 = er1 * k[0] + er6 * k[5] + er7 * k[6] + er8 * k[7] + er9 * k[8] + er10 * k[9] + er11 * k[10] +
           er12 * k[11];

    double e5 = 0.0, e3 = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      double sk = atol + rtol * std::max(std::abs(y(i)), std::abs(y_new(i)));
      e5 += std::norm(err5(i)) / (sk * sk);
      e3 += std::norm(err3(i)) / (sk * sk);
    }
    const double n = static_cast<double>(y.size());
    double deno = e5 + 0.01 * e3;
    if (deno <= 0.0) deno = 1.0;
    return std::abs(h) * e5 / std::sqrt(deno * n);
  }

  template <class Rhs>
  void advance(Rhs &f, double t, const Vec &y) {
    f(t, y, k[0]);
  }
};

struct SegmentStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  double max_drift = 0.0;
};

constexpr std::size_t max_steps_per_block = 200'000'000;

/// Integrates y over [t_begin, t_end] with no breakpoint inside. `h` carries the
/// step-size suggestion between segments.
template <class Stepper, class Rhs>
void run_segment(Stepper &st, Rhs &f, Vec &y, double t_begin, double t_end, double &h, double norm0,
                 const IntegratorConfig &cfg, SegmentStats &stats) {
  double t = t_begin;
  f(t, y, st.first());
  Vec y_new(y.size());
  double err_prev = 1e-4;
  bool rejected_last = false;
  const double h_limit = cfg.max_step > 0.0 ? cfg.max_step : std::numeric_limits<double>::infinity();

  while (t < t_end) {
    if (stats.accepted + stats.rejected > max_steps_per_block)
      throw StepSizeUnderflow("integration step budget exhausted near t = " + std::to_string(t));
    h = std::min(h, h_limit);
    bool last = false;
    if (t + 1.01 * h >= t_end) {
      h = t_end - t;
      last = true;
    }
    if (h <= 1e-12 * std::max(1.0, std::abs(t)))
      throw StepSizeUnderflow("step size underflow (h = " + std::to_string(h) + ") at t = " + std::to_string(t));

    const double err = st.step(f, t, y, h, y_new, cfg.atol, cfg.rtol);
    if (err <= 1.0) {
      ++stats.accepted;
      t = last ? t_end : t + h;
      y.swap(y_new);
      const double drift = std::abs(y.squaredNorm() - norm0);
      stats.max_drift = std::max(stats.max_drift, drift);
      if (drift > cfg.norm_drift_bound) {
        std::ostringstream msg;
        msg << "norm drift " << drift << " exceeds bound " << cfg.norm_drift_bound << " at t = " << t;
        throw NormDriftExceeded(msg.str());
      }
      // PI controller.
      double fac = 0.9 * std::pow(std::max(err, 1e-16), -(Stepper::error_exponent - 0.75 * Stepper::beta)) *
                   std::pow(err_prev, Stepper::beta);
      fac = std::clamp(fac, Stepper::fac_min, Stepper::fac_max);
      if (rejected_last) fac = std::min(fac, 1.0);
      err_prev = std::max(err, 1e-4);
      rejected_last = false;
      if (!last) h *= fac;
      if (t < t_end) st.advance(f, t, y);
    } else {
      ++stats.rejected;
      h *= std::max(Stepper::fac_min, 0.9 * std::pow(err, -Stepper::error_exponent));
      rejected_last = true;
    }
  }
}

/// Hairer's starting step heuristic.
template <class Rhs>
double initial_step(Rhs &f, double t, const Vec &y, double order, double span, const IntegratorConfig &cfg) {
  Vec f0(y.size()), f1(y.size());
  f(t, y, f0);
  auto scaled = [&](const Vec &v) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      double sk = cfg.atol + cfg.rtol * std::abs(y(i));
      acc += std::norm(v(i)) / (sk * sk);
    }
    return std::sqrt(acc / static_cast<double>(v.size()));
  };
  const double d0 = scaled(y), d1 = scaled(f0);
  double h0 = (d0 < 1e-10 || d1 < 1e-10) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, span);
  Vec y1 = y + h0 * f0;
  f(t + h0, y1, f1);
  const double d2 = scaled(f1 - f0) / h0;
  const double dm = std::max(d1, d2);
  double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 1.0 / (order + 1.0));
  return std::min({100.0 * h0, h1, span});
}

template <class Stepper>
SegmentStats integrate_block(const HamiltonianModel &model, const ExcitationBlock &block, Vec &y,
                             const std::vector<double> &cuts, const IntegratorConfig &cfg, double order) {
  BlockRhs f(model, block);
  Stepper st(y.size());
  SegmentStats stats;
  const double norm0 = y.squaredNorm();
  double h = initial_step(f, cuts.front(), y, order, cuts[1] - cuts.front(), cfg);
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) run_segment(st, f, y, cuts[s], cuts[s + 1], h, norm0, cfg, stats);
  return stats;
}

std::vector<double> segment_cuts(const HamiltonianModel &model, double t0, double t1) {
  std::vector<double> cuts{t0};
  for (double b : model.schedule().breakpoints())
    if (b > t0 && b < t1) cuts.push_back(b);
  cuts.push_back(t1);
  return cuts;
}

void check_initial_state(const HamiltonianModel &model, const StateVector &psi0, double t0, double t1) {
  if (static_cast<std::size_t>(psi0.amplitudes.size()) != model.basis().size())
    throw std::invalid_argument("integrate: state dimension does not match the basis");
  if (!(t1 >= t0)) throw std::invalid_argument("integrate: t1 must not precede t0");
  if (std::abs(psi0.norm() - 1.0) > 1e-9) throw std::invalid_argument("integrate: initial state must be normalised");
}

} // namespace

IntegrationResult integrate(const HamiltonianModel &model, const StateVector &psi0, double t0, double t1,
                            const IntegratorConfig &cfg) {
  cfg.validate();
  check_initial_state(model, psi0, t0, t1);
  if (cfg.method == Method::expm_oracle) {
    IntegrationResult r{expm_oracle(model, psi0, t0, t1, cfg.oracle_steps)};
    r.max_norm_drift = std::abs(r.state.amplitudes.squaredNorm() - psi0.amplitudes.squaredNorm());
    r.accepted_steps = static_cast<std::size_t>(cfg.oracle_steps);
    return r;
  }

  IntegrationResult result{psi0};
  result.state.time = t1;
  if (t1 == t0) return result;
  const auto cuts = segment_cuts(model, t0, t1);

  for (const auto &block : model.blocks()) {
    Vec y(block.size());
    for (Eigen::Index k = 0; k < block.size(); ++k)
      y(k) = psi0.amplitudes(static_cast<Eigen::Index>(block.indices[static_cast<std::size_t>(k)]));
    if (y.squaredNorm() == 0.0) continue;

    SegmentStats stats = cfg.scheme == RkScheme::dop853
                             ? integrate_block<Dop853>(model, block, y, cuts, cfg, 8.0)
                             : integrate_block<Dopri5>(model, block, y, cuts, cfg, 5.0);
    result.accepted_steps += stats.accepted;
    result.rejected_steps += stats.rejected;
    result.max_norm_drift += stats.max_drift;
    for (Eigen::Index k = 0; k < block.size(); ++k)
      result.state.amplitudes(static_cast<Eigen::Index>(block.indices[static_cast<std::size_t>(k)])) = y(k);
  }
  if (result.max_norm_drift > cfg.norm_drift_bound) {
    std::ostringstream msg;
    msg << "combined norm drift " << result.max_norm_drift << " exceeds bound " << cfg.norm_drift_bound;
    throw NormDriftExceeded(msg.str());
  }
  return result;
}

StateVector expm_oracle(const HamiltonianModel &model, const StateVector &psi0, double t0, double t1, int n_steps) {
  if (n_steps < 1) throw std::invalid_argument("expm_oracle: n_steps must be >= 1");
  if (static_cast<std::size_t>(psi0.amplitudes.size()) != model.basis().size())
    throw std::invalid_argument("expm_oracle: state dimension does not match the basis");

  const auto cuts = segment_cuts(model, t0, t1);
  auto constant_on = [&](double a, double b) {
    const Couplings ka = model.couplings(a), kb = model.couplings(b);
    return ka == kb && model.couplings(0.5 * (a + b)) == ka;
  };
  int varying = 0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s)
    if (!constant_on(cuts[s], cuts[s + 1])) ++varying;
  const int per_segment = varying > 0 ? std::max(1, n_steps / varying) : 1;

  Vec psi = psi0.amplitudes;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig;
  auto step = [&](double mid, double dt) {
    eig.compute(model.assemble(mid));
    const Vec phases = (eig.eigenvalues().cast<complex>() * complex(0.0, -dt)).array().exp().matrix();
    psi = eig.eigenvectors() * (phases.asDiagonal() * (eig.eigenvectors().adjoint() * psi));
  };
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double a = cuts[s], b = cuts[s + 1];
    if (constant_on(a, b)) {
      step(0.5 * (a + b), b - a);
      continue;
    }
    const double dt = (b - a) / per_segment;
    for (int k = 0; k < per_segment; ++k) step(a + (k + 0.5) * dt, dt);
  }
  return {psi, t1};
}

std::vector<StateVector> sample_trajectory(const HamiltonianModel &model, const StateVector &psi0, double t0,
                                           double t1, int samples, const IntegratorConfig &cfg) {
  if (samples < 2) throw std::invalid_argument("sample_trajectory: need at least two samples");
  std::vector<StateVector> out{psi0};
  out.front().time = t0;
  for (int s = 1; s < samples; ++s) {
    const double t = t0 + (t1 - t0) * s / (samples - 1);
    StateVector start = out.back();
    // Re-normalise only the starting point handed to the next leg; the stored
    // samples keep the raw amplitudes.
    start.amplitudes /= start.norm();
    auto leg = integrate(model, start, out.back().time, t, cfg);
    leg.state.amplitudes *= out.back().norm();
    out.push_back(leg.state);
  }
  return out;
}

void write_trajectory_csv(std::ostream &out, const std::vector<StateVector> &trajectory) {
  if (trajectory.empty()) return;
  out << 't';
  for (Eigen::Index i = 0; i < trajectory.front().amplitudes.size(); ++i) out << ",p_" << i;
  out << '\n';
  char buf[32];
  for (const auto &psi : trajectory) {
    std::snprintf(buf, sizeof buf, "%.12g", psi.time);
    out << buf;
    for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.12g", std::norm(psi.amplitudes(i)));
      out << ',' << buf;
    }
    out << '\n';
  }
}

double excitation_expectation(const BasisSet &basis, const StateVector &psi) {
  double acc = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) acc += basis[i].excitations() * std::norm(psi[i]);
  return acc;
}

} // namespace zeno
