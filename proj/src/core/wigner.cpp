#include "wigner.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "errors.hpp"

namespace lgsim::wigner {

namespace {

using ld = long double;

// Terms below this j use exact factorials; above it the log-gamma route.
constexpr int kDirectTwoJ = 40;
constexpr double kSpectralSwitchError = 1e-13;

ld log_factorial(int n) { return std::lgamma(static_cast<ld>(n) + 1.0L); }

ld factorial(int n) {
  ld f = 1.0L;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

struct Neumaier {
  ld sum = 0.0L;
  ld comp = 0.0L;
  void add(ld x) {
    const ld t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  ld value() const { return sum + comp; }
};

// Real orthogonal eigenvectors of Jx for a given j, shared across calls.
struct JxSpectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;  // column k is eigenvector k, ascending-m rows
};

std::shared_ptr<const JxSpectrum> jx_spectrum(int two_j) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const JxSpectrum>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(two_j);
  if (it != cache.end()) return it->second;
  const int d = two_j + 1;
  const double j = 0.5 * two_j;
  Eigen::MatrixXd jx = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) {
    const double m = i - j;
    const double v = 0.5 * std::sqrt(j * (j + 1.0) - m * (m - 1.0));
    jx(i - 1, i) = v;
    jx(i, i - 1) = v;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jx);
  auto spec = std::make_shared<JxSpectrum>(JxSpectrum{es.eigenvalues(), es.eigenvectors()});
  cache.emplace(two_j, spec);
  return spec;
}

}  // namespace

void DMatrixQuery::validate() const {
  auto bad = [this](const char* what) {
    std::ostringstream os;
    os << "d-matrix query " << what << " (2j=" << two_j << ", 2m_from=" << two_m_from << ", 2m_to=" << two_m_to
       << ")";
    throw DomainError(os.str());
  };
  if (two_j < 0) bad("has negative j");
  if (std::abs(two_m_from) > two_j || std::abs(two_m_to) > two_j) bad("has |m| > j");
  if (((two_j + two_m_from) % 2) != 0 || ((two_j + two_m_to) % 2) != 0) bad("mixes integer and half-integer ladders");
  if (!std::isfinite(beta)) bad("has non-finite beta");
}

double small_d(const DMatrixQuery& q) {
  q.validate();
  // Integer ladder offsets: jpm = j+m, jmm = j-m, and similarly for m'.
  const int jpm = (q.two_j + q.two_m_from) / 2;
  const int jmm = (q.two_j - q.two_m_from) / 2;
  const int jpmp = (q.two_j + q.two_m_to) / 2;
  const int jmmp = (q.two_j - q.two_m_to) / 2;
  const int dm = (q.two_m_from - q.two_m_to) / 2;  // m - m'
  const int k_lo = std::max(0, dm);
  const int k_hi = std::min(jmmp, jpm);

  const ld c = std::cos(static_cast<ld>(q.beta) / 2.0L);
  const ld s = std::sin(static_cast<ld>(q.beta) / 2.0L);
  const int two_j_int = q.two_j;

  Neumaier acc;
  ld max_term = 0.0L;
  const bool direct = q.two_j < kDirectTwoJ;
  const ld log_prefactor =
      direct ? 0.0L : 0.5L * (log_factorial(jpm) + log_factorial(jmm) + log_factorial(jpmp) + log_factorial(jmmp));
  const ld prefactor =
      direct ? std::sqrt(factorial(jpm) * factorial(jmm) * factorial(jpmp) * factorial(jmmp)) : 0.0L;
  const ld log_c = std::log(std::fabs(c));
  const ld log_s = std::log(std::fabs(s));

  for (int k = k_lo; k <= k_hi; ++k) {
    const int pc = two_j_int - 2 * k + dm;  // cos power
    const int ps = 2 * k - dm;              // sin power
    const ld sign = ((k - dm) % 2 == 0) ? 1.0L : -1.0L;
    ld term;
    if (direct) {
      term = sign * prefactor / (factorial(jpm - k) * factorial(k) * factorial(jmmp - k) * factorial(k - dm)) *
             std::pow(c, pc) * std::pow(s, ps);
    } else {
      // Zero bases only matter with positive powers; pow(0, 0) = 1.
      if ((c == 0.0L && pc > 0) || (s == 0.0L && ps > 0)) continue;
      const ld log_mag = log_prefactor - log_factorial(jpm - k) - log_factorial(k) - log_factorial(jmmp - k) -
                         log_factorial(k - dm) + (pc > 0 ? pc * log_c : 0.0L) + (ps > 0 ? ps * log_s : 0.0L);
      const ld trig_sign = ((pc % 2 != 0 && c < 0) != (ps % 2 != 0 && s < 0)) ? -1.0L : 1.0L;
      term = sign * trig_sign * std::exp(log_mag);
    }
    max_term = std::max(max_term, std::fabs(term));
    acc.add(term);
  }

  // Cancellation in the alternating sum: rounding error ~ max|term| * eps.
  const ld est_error = max_term * std::numeric_limits<ld>::epsilon() * (k_hi - k_lo + 2);
  if (!(est_error < kSpectralSwitchError)) return small_d_spectral(q);
  return static_cast<double>(acc.value());
}

// e^{-i beta Jy} = e^{-i pi Jz/2} e^{-i beta Jx} e^{i pi Jz/2}, so
// <to|e^{-i beta Jy}|from> = e^{-i pi (m_to - m_from)/2} sum_k V_to,k V_from,k e^{-i beta lambda_k}.
double small_d_spectral(const DMatrixQuery& q) {
  q.validate();
  const int two_j = q.two_j, two_m_from = q.two_m_from, two_m_to = q.two_m_to;
  const double beta = q.beta;
  const auto spec = jx_spectrum(two_j);
  const int from = (two_m_from + two_j) / 2;
  const int to = (two_m_to + two_j) / 2;
  cplx acc = 0.0;
  for (Eigen::Index k = 0; k < spec->eigenvalues.size(); ++k)
    acc += spec->eigenvectors(to, k) * spec->eigenvectors(from, k) *
           std::polar(1.0, -beta * spec->eigenvalues(k));
  const double phase = -0.25 * kPi * (two_m_to - two_m_from);
  return (acc * std::polar(1.0, phase)).real();
}

double element_from_top(int two_j, int two_m, double theta) {
  DMatrixQuery{two_j, two_m, two_m, theta}.validate();
  const int jpm = (two_j + two_m) / 2;
  const int jmm = (two_j - two_m) / 2;
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  if ((c == 0.0 && jpm > 0) || (s == 0.0 && jmm > 0)) return 0.0;
  const double log_binom = std::lgamma(two_j + 1.0) - std::lgamma(jpm + 1.0) - std::lgamma(jmm + 1.0);
  const double log_val =
      log_binom + (jpm > 0 ? 2.0 * jpm * std::log(std::fabs(c)) : 0.0) + (jmm > 0 ? 2.0 * jmm * std::log(std::fabs(s)) : 0.0);
  return std::exp(log_val);
}

double element_from_bottom(int two_j, int two_m, double theta) { return element_from_top(two_j, -two_m, theta); }

Eigen::MatrixXd d_matrix(int two_j, double beta) {
  const int d = two_j + 1;
  Eigen::MatrixXd out(d, d);
  for (int to = 0; to < d; ++to)
    for (int from = 0; from < d; ++from)
      out(to, from) = small_d({two_j, 2 * from - two_j, 2 * to - two_j, beta});
  return out;
}

RMatrix transition_probability_matrix(int two_j, double theta, int cap_two_j) {
  if (two_j < 0) throw DomainError("transition_probability_matrix: negative j");
  if (two_j > cap_two_j) {
    std::ostringstream os;
    os << "transition_probability_matrix: j = " << 0.5 * two_j << " exceeds analytic cap j = " << 0.5 * cap_two_j;
    throw InvalidArgument(os.str());
  }
  // |<m|exp(-i Jx theta)|n>|^2 = |d^j_{n,m}(theta)|^2
  const Eigen::MatrixXd dm = d_matrix(two_j, theta);
  return dm.cwiseAbs2();
}

CMatrix rotation_x(int two_j, double theta) {
  const Eigen::MatrixXd dm = d_matrix(two_j, theta);
  const int d = two_j + 1;
  CMatrix u(d, d);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) {
      // i^(m - n) with m, n the ladder positions; (m - n) is an integer.
      const int diff = ((m - n) % 4 + 4) % 4;
      static const cplx kPowI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      u(m, n) = kPowI[diff] * dm(m, n);
    }
  return u;
}

}  // namespace lgsim::wigner
