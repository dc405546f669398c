#pragma once

#include <compare>
#include <string>

namespace hqed {

enum class Branch { Plus, Minus };
enum class Scheme { Grwa, Rwa };

// Hybrid families carry (N, M); QRM families live on atom x photon only.
enum class Family { Doublet, Isolated, QrmDoublet, QrmGround, ZeroPolariton };

struct AnalyticStateLabel {
  Family family = Family::Doublet;
  int n = 0;
  int m = 0;
  Branch branch = Branch::Plus;
  Scheme scheme = Scheme::Grwa;

  static AnalyticStateLabel zero_polariton(int m, Scheme s = Scheme::Grwa);
  static AnalyticStateLabel isolated(int n, Scheme s = Scheme::Grwa);
  static AnalyticStateLabel doublet(int n, int m, Branch b, Scheme s = Scheme::Grwa);
  static AnalyticStateLabel qrm_ground(Scheme s = Scheme::Grwa);
  static AnalyticStateLabel qrm_doublet(int n, Branch b, Scheme s = Scheme::Grwa);

  bool uses_n() const;
  bool uses_m() const;
  bool uses_branch() const;
  bool is_hybrid() const { return family != Family::QrmDoublet && family != Family::QrmGround; }
  // Same label under the other scheme.
  AnalyticStateLabel with_scheme(Scheme s) const;
  std::string describe() const;
};

const char* family_name(Family f);
Family family_from_name(const std::string& name);
char branch_char(Branch b);
double branch_sign(Branch b);
const char* scheme_name(Scheme s);

// Lexicographic on (family name, N, M, sign, scheme); unused indices compare as 0 / '+'.
std::strong_ordering compare_labels(const AnalyticStateLabel& a, const AnalyticStateLabel& b);
inline bool operator<(const AnalyticStateLabel& a, const AnalyticStateLabel& b) { return compare_labels(a, b) < 0; }
inline bool operator==(const AnalyticStateLabel& a, const AnalyticStateLabel& b) { return compare_labels(a, b) == 0; }

}  // namespace hqed
