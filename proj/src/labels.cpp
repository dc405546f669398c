#include "hqed/labels.hpp"
#include "hqed/params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <tuple>

namespace hqed {

void SystemParams::validate() const {
  auto bad = [](double x) { return !std::isfinite(x); };
  if (bad(omega_a) || bad(omega_c) || bad(omega_m) || bad(g_ac) || bad(g_om))
    throw std::invalid_argument("SystemParams: non-finite value in " + describe());
  if (omega_a <= 0 || omega_c <= 0 || omega_m <= 0)
    throw std::invalid_argument("SystemParams: frequencies must be > 0 in " + describe());
  if (g_ac < 0 || g_om < 0) throw std::invalid_argument("SystemParams: couplings must be >= 0 in " + describe());
}

std::string SystemParams::describe() const {
  std::ostringstream os;
  os << "{omega_a=" << omega_a << ", omega_c=" << omega_c << ", omega_m=" << omega_m << ", g_ac=" << g_ac
     << ", g_om=" << g_om << '}';
  return os.str();
}

namespace {
void require_index(int i, const char* what) {
  if (i < 0) throw std::invalid_argument(std::string("AnalyticStateLabel: negative ") + what);
}
}  // namespace

AnalyticStateLabel AnalyticStateLabel::zero_polariton(int m, Scheme s) {
  require_index(m, "M");
  return {Family::ZeroPolariton, 0, m, Branch::Plus, s};
}
AnalyticStateLabel AnalyticStateLabel::isolated(int n, Scheme s) {
  require_index(n, "N");
  return {Family::Isolated, n, 0, Branch::Plus, s};
}
AnalyticStateLabel AnalyticStateLabel::doublet(int n, int m, Branch b, Scheme s) {
  require_index(n, "N");
  require_index(m, "M");
  return {Family::Doublet, n, m, b, s};
}
AnalyticStateLabel AnalyticStateLabel::qrm_ground(Scheme s) { return {Family::QrmGround, 0, 0, Branch::Plus, s}; }
AnalyticStateLabel AnalyticStateLabel::qrm_doublet(int n, Branch b, Scheme s) {
  require_index(n, "N");
  return {Family::QrmDoublet, n, 0, b, s};
}

bool AnalyticStateLabel::uses_n() const {
  return family == Family::Doublet || family == Family::Isolated || family == Family::QrmDoublet;
}
bool AnalyticStateLabel::uses_m() const { return family == Family::Doublet || family == Family::ZeroPolariton; }
bool AnalyticStateLabel::uses_branch() const { return family == Family::Doublet || family == Family::QrmDoublet; }

AnalyticStateLabel AnalyticStateLabel::with_scheme(Scheme s) const {
  auto l = *this;
  l.scheme = s;
  return l;
}

std::string AnalyticStateLabel::describe() const {
  std::ostringstream os;
  os << scheme_name(scheme) << ':' << family_name(family);
  if (uses_n()) os << " N=" << n;
  if (uses_m()) os << " M=" << m;
  if (uses_branch()) os << ' ' << branch_char(branch);
  return os.str();
}

const char* family_name(Family f) {
  switch (f) {
    case Family::Doublet: return "doublet";
    case Family::Isolated: return "isolated";
    case Family::QrmDoublet: return "qrm_doublet";
    case Family::QrmGround: return "qrm_ground";
    case Family::ZeroPolariton: return "zero_polariton";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  for (Family f : {Family::Doublet, Family::Isolated, Family::QrmDoublet, Family::QrmGround, Family::ZeroPolariton})
    if (name == family_name(f)) return f;
  throw std::invalid_argument("unknown state family '" + name + "'");
}

char branch_char(Branch b) { return b == Branch::Plus ? '+' : '-'; }
double branch_sign(Branch b) { return b == Branch::Plus ? 1.0 : -1.0; }
const char* scheme_name(Scheme s) { return s == Scheme::Grwa ? "grwa" : "rwa"; }

std::strong_ordering compare_labels(const AnalyticStateLabel& a, const AnalyticStateLabel& b) {
  if (auto c = std::string_view(family_name(a.family)) <=> std::string_view(family_name(b.family)); c != 0)
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  auto key = [](const AnalyticStateLabel& l) {
    return std::tuple(l.uses_n() ? l.n : 0, l.uses_m() ? l.m : 0,
                      l.uses_branch() ? branch_char(l.branch) : '+', static_cast<int>(l.scheme));
  };
  return key(a) <=> key(b);
}

}  // namespace hqed
