#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "ellflow/complex.hpp"
#include "ellflow/flow.hpp"
#include "ellflow/implicit.hpp"
#include "ellflow/weierstrass.hpp"

namespace ellflow {

struct ProfileFunction {
  std::function<double(double)> eval;
  std::function<double(double)> derivative;
  std::string label;
};

/// Wraps f; the derivative is a Richardson-extrapolated centred difference.
ProfileFunction make_profile(std::function<double(double)> f, std::string label, double step = 1e-3);

enum class Family { Periodic1, Periodic2a, Bump2b, Bump2c, Kink3 };

Family parse_family(std::string_view s);
std::string_view family_name(Family f);

/// How the row-1 constant enters. Integral: amplitude sqrt(C), g3 = 8/27 + (4/3) C^2.
/// Table: amplitude C, g3 = 8/27 + (4/3) C^4. Both solve F'' + F + F^5 = 0.
enum class G3Convention { Integral, Table };

double row1_g3(double C, G3Convention conv);

/// Square root taken in a_i = sqrt(H). Signed: the analytic root, which changes
/// sign at each double zero of H and keeps a_i smooth. Positive: |a_i|, with
/// corners at those zeros.
enum class RootBranch { Signed, Positive };

/// One scalar amplitude a_i(r) of the rank-3 superposition.
class Table3Profile {
 public:
  /// e0 is only used by Bump2c; pass NaN to take the compatible value 1/(12 k0^2).
  Table3Profile(Family family, double C, double k0 = 1.0, double e0 = NAN, G3Convention conv = G3Convention::Integral,
                RootBranch branch = RootBranch::Signed);

  double value(double r) const { return value_and_derivative(r).first; }
  std::pair<double, double> value_and_derivative(double r) const;

  Family family() const { return family_; }
  const Invariants& invariants() const { return inv_; }
  const WeierstrassP& wp() const { return *wp_; }
  double C() const { return C_; }
  double k0() const { return k0_; }
  double e0() const { return e0_; }

 private:
  double real_wp(double z, double& dp) const;
  std::pair<double, double> magnitude(double r, double& zeta) const;
  double sign_at(double zeta) const;

  Family family_;
  double C_, k0_, e0_;
  G3Convention conv_;
  RootBranch branch_;
  Invariants inv_;
  std::shared_ptr<const WeierstrassP> wp_;
};

double table3_profile(Family family, double C, double k0, double e0, double r);

struct Rank3Config {
  Family family = Family::Periodic1;
  std::array<double, 3> C{0.0, 0.0, 0.0};
  double k0 = 1.0;
  double e0 = NAN;
  MediumParams med = MediumParams::from_kappa(5.0);
  EntropicTriad triad = make_entropic_triad(MediumParams::from_kappa(5.0));
  G3Convention convention = G3Convention::Integral;
  RootBranch branch = RootBranch::Signed;
};

struct Rank3Point {
  FlowState state;
  std::array<double, 3> r{0.0, 0.0, 0.0};
};

/// r^i = -(1 + kappa) a_i(r^i) t + e^i . x, a = sum a_i, u = kappa sum a_i e^i.
class Rank3Solution {
 public:
  explicit Rank3Solution(const Rank3Config& cfg);

  Rank3Point eval(double t, const Vec3& x) const;
  double solve_component(int i, double t, const Vec3& x) const;
  /// r -> -(1 + kappa) a_i(r) t + e^i . x as a two-variable family at fixed x.
  BranchFamily branch(int i, const Vec3& x) const;
  const Table3Profile* profile(int i) const { return profiles_[i].get(); }
  const Rank3Config& config() const { return cfg_; }

 private:
  Rank3Config cfg_;
  std::array<std::shared_ptr<const Table3Profile>, 3> profiles_;
};

Rank3Point rank3_eval(const Rank3Config& cfg, double t, const Vec3& x);

/// r = [(1 + kappa) p(r) + e.C] t - e.x;  a = p(r), u = kappa e p(r) + C.
FlowState rank1_entropic(const ProfileFunction& profile, const Vec3& e, const Vec3& Cvec, const MediumParams& med, double t,
                         const Vec3& x);

/// r = C t - det(x, e, m); a = a0, (u1, u2) from the profiles, u3 fixed by det(u, e, m) = C.
FlowState rank1_acoustic(const ProfileFunction& u1, const ProfileFunction& u2, const Vec3& e, const Vec3& m, double C,
                         double a0, double t, const Vec3& x);

}  // namespace ellflow
