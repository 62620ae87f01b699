// Acceptance suite: one line per criterion, exit code = number of failures.
//
// Covers the full verification program: Sturm certification of the identity
// registry, the four vanishing-set theorems plus the introductory families,
// the two-squares / binary-form divisor formulas, dual-route newform
// coefficients with Hecke structure and the Deligne bound, closed-form
// Eisenstein coefficients, growth-function thresholds, the positivity /
// non-vanishing scans, and negative controls.
//
// Setting ETAQ_ACCEPTANCE_EXTENDED=1 additionally runs the full f2 scan to
// n = 309400 (several minutes).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "etaq/registry.hpp"

using namespace etaq;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, const std::function<bool(std::string&)>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::printf("[%s] criterion %2d: %s (%ld ms)%s%s\n", ok ? "PASS" : "FAIL", number,
                label.c_str(), ms, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

bool crosschecks_pass(const std::vector<std::string>& ids, long limit, std::string& detail) {
    for (const auto& id : ids) {
        auto fam = find_family(id);
        if (!fam) {
            detail = "unknown family " + id;
            return false;
        }
        CrosscheckReport rep = crosscheck_vanishing(*fam, limit, 2);
        if (!rep.pass) {
            detail = id + ": " + std::to_string(rep.mismatches.size()) + " mismatches, first at n=" +
                     std::to_string(rep.mismatches.front().n);
            return false;
        }
    }
    return true;
}

// |c|^2 <= bound, exactly: norm for imaginary fields, both real embeddings
// squared for real fields, plain square for rationals.
bool abs_squared_at_most(const QuadScalar& c, const Rational& bound) {
    if (c.d() == 0) return c.a() * c.a() <= bound;
    if (c.d() < 0) return c.norm() <= bound;
    QuadScalar sq = c * c;
    QuadScalar margin1 = QuadScalar(bound) - sq;
    QuadScalar margin2 = QuadScalar(bound) - sq.conj();
    return margin1.sign_real() >= 0 && margin2.sign_real() >= 0;
}

}  // namespace

int main() {
    std::printf("==========================================================\n");
    std::printf(" exact eta-quotient verification: acceptance suite\n");
    std::printf("==========================================================\n");

    criterion(1, "identity certification: every registry record passes at max(Sturm, 2000)",
              [](std::string& detail) {
                  long count = 0;
                  for (const auto& rec : registry()) {
                      if (rec.negative_control) continue;
                      VerificationReport rep = verify_identity(rec, 2000);
                      if (!rep.pass) {
                          detail = rec.id + " failed";
                          if (rep.mismatch)
                              detail += " at n=" + std::to_string(rep.mismatch->k24 / 24);
                          return false;
                      }
                      ++count;
                  }
                  detail = std::to_string(count) + " identities certified";
                  return count >= 24;
              });

    criterion(2, "both 3n+2 families match the ord_p(3n+2) predicate to 10^4",
              [](std::string& d) { return crosschecks_pass({"L52-1", "L52-2"}, 10000, d); });

    criterion(3, "all five 8n+3 families match the ord_p(8n+3) predicate to 10^4",
              [](std::string& d) {
                  return crosschecks_pass({"L95-1", "L95-2", "L95-3", "L95-4", "L95-5"}, 10000, d);
              });

    criterion(4, "both n = 2 mod 3 families match their predicate to 10^4",
              [](std::string& d) { return crosschecks_pass({"L65-1", "L65-2"}, 10000, d); });

    criterion(5, "both three-square families match 4^k(8m+7) to 10^4; Theta^3 = 12 H_{1,2}|U_2 to 2000",
              [](std::string& d) {
                  if (!crosschecks_pass({"L133-1", "L133-2"}, 10000, d)) return false;
                  auto rec = find_identity("THREESQ-THETA");
                  VerificationReport rep = verify_identity(*rec, 2000);
                  if (!rep.pass) d = "Theta^3 identity failed";
                  return rep.pass;
              });

    criterion(6, "intro families share one zero-pattern matching ord_p(3n+1); Lagrange family never vanishes",
              [](std::string& d) {
                  if (!crosschecks_pass({"INTRO-1^8", "INTRO-1^-1.3^3", "INTRO-1^2.3^2",
                                         "INTRO-LAGRANGE"},
                                        10000, d))
                      return false;
                  const long N = 10000;
                  auto a = detail::c_series_integer(EtaSpec::parse("1^8"), N);
                  auto b = detail::c_series_integer(EtaSpec::parse("1^-1 3^3"), N);
                  auto c = detail::c_series_integer(EtaSpec::parse("1^2 3^2"), N);
                  for (long n = 1; n <= N; ++n) {
                      bool za = mpz_sgn(a[n].get_mpz_t()) == 0;
                      bool zb = mpz_sgn(b[n].get_mpz_t()) == 0;
                      bool zc = mpz_sgn(c[n].get_mpz_t()) == 0;
                      if (za != zb || za != zc) {
                          d = "pattern divergence at n=" + std::to_string(n);
                          return false;
                      }
                  }
                  return true;
              });

    criterion(7, "r_{(1,1)} and r_{(1,2)} equal their divisor-sum forms to 5000",
              [](std::string& d) {
                  for (long n = 1; n <= 5000; ++n) {
                      long s4 = 0, s2 = 0;
                      for (long dd : divisors(n)) {
                          s4 += kronecker(-4, dd);
                          s2 += kronecker(-2, dd);
                      }
                      if (rep_diagonal({1, 1}, n) != 4 * s4 ||
                          rep_diagonal({1, 2}, n) != 2 * s2) {
                          d = "divisor form fails at n=" + std::to_string(n);
                          return false;
                      }
                      bool zero = rep_diagonal({1, 2}, n) == 0;
                      if (zero != vanishing_predicate(PredicateId::OrdOddP5or7Mod8, n)) {
                          d = "r_{(1,2)} vanishing characterization fails at n=" +
                              std::to_string(n);
                          return false;
                      }
                  }
                  return true;
              });

    criterion(8, "newforms: dual-route coefficients to 2000; Hecke recursion, multiplicativity and Deligne bound to 5000",
              [](std::string& d) {
                  const long N = 5000;
                  for (int i = 1; i <= 8; ++i) {
                      NewformId id = static_cast<NewformId>(i);
                      FormMeta meta = newform_meta(id);
                      long kappa = meta.weight2 / 2;
                      QExpansion f = newform_expand(id, N);
                      for (long n = 1; n <= 2000; ++n) {
                          if (!(f.at(n) == newform_coeff_closed(id, n))) {
                              d = std::string(newform_name(id)) + " dual-route split at n=" +
                                  std::to_string(n);
                              return false;
                          }
                      }
                      // multiplicativity on coprime products
                      for (long m = 2; m * m <= N; ++m)
                          for (long n2 = m + 1; m * n2 <= N; ++n2) {
                              if (std::gcd(m, n2) != 1) continue;
                              if (!(f.at(m * n2) == f.at(m) * f.at(n2))) {
                                  d = std::string(newform_name(id)) +
                                      " multiplicativity fails at " + std::to_string(m) + "*" +
                                      std::to_string(n2);
                                  return false;
                              }
                          }
                      // prime-power recursion away from the level
                      for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L,
                                     41L, 43L, 47L}) {
                          if (meta.level % p == 0) continue;
                          QuadScalar twist(rat(meta.chi(p)) *
                                           rat(pow_int(Integer(p),
                                                       static_cast<unsigned long>(kappa - 1))));
                          for (long pr = p * p; pr <= N; pr *= p) {
                              QuadScalar expect =
                                  f.at(p) * f.at(pr / p) - twist * f.at(pr / (p * p));
                              if (!(f.at(pr) == expect)) {
                                  d = std::string(newform_name(id)) + " Hecke recursion at " +
                                      std::to_string(pr);
                                  return false;
                              }
                          }
                      }
                      // Deligne: |c(n)|^2 <= d(n)^2 n^{kappa-1}
                      for (long n = 1; n <= N; ++n) {
                          Rational bound =
                              rat(divisor_count(n)) * rat(divisor_count(n)) *
                              rat(pow_int(Integer(n), static_cast<unsigned long>(kappa - 1)));
                          if (!abs_squared_at_most(f.at(n), bound)) {
                              d = std::string(newform_name(id)) + " Deligne bound fails at n=" +
                                  std::to_string(n);
                              return false;
                          }
                      }
                  }
                  return true;
              });

    criterion(9, "closed-form E1/E2 coefficients equal the divisor-sum definitions to 10^4",
              [](std::string& d) {
                  const long N = 10000;
                  QExpansion e1 = eisenstein_divisor_series(EisClosed::E1, N);
                  QExpansion e2 = eisenstein_divisor_series(EisClosed::E2, N);
                  for (long n = 1; n <= N; ++n) {
                      if (eisenstein_closed_form(EisClosed::E1, n) != e1.at(n).a()) {
                          d = "E1 closed form fails at n=" + std::to_string(n);
                          return false;
                      }
                      if (eisenstein_closed_form(EisClosed::E2, n) != e2.at(n).a()) {
                          d = "E2 closed form fails at n=" + std::to_string(n);
                          return false;
                      }
                  }
                  return true;
              });

    criterion(10, "growth thresholds: G1(n)^2 > 16/9 for 1120 < n <= 10^5 (n = 1 mod 3); all nine f_{alpha,nu} sign checks",
              [](std::string& d) {
                  const Rational t = rat(16, 9);
                  for (long n = 1121; n <= 100000; ++n) {
                      if (n % 3 != 1) continue;
                      if (!(growth_G_squared(GrowthG::G1, n) > t)) {
                          d = "G1 threshold fails at n=" + std::to_string(n);
                          return false;
                      }
                  }
                  const Rational a21 = rat(21, 10), a10 = rat(10);
                  struct Check { const Rational& alpha; long nu, x; };
                  const Check checks[] = {{a21, 1, 20}, {a21, 2, 8},  {a21, 3, 5},
                                          {a10, 1, 402}, {a10, 2, 31}, {a10, 3, 13},
                                          {a10, 4, 8},   {a10, 5, 6},  {a10, 6, 5}};
                  for (const auto& c : checks) {
                      if (!growth_f_nonneg(c.alpha, c.nu, c.x)) {
                          d = "f_{alpha," + std::to_string(c.nu) + "}(" + std::to_string(c.x) +
                              ") < 0";
                          return false;
                      }
                  }
                  return true;
              });

    criterion(11, "positivity and non-vanishing scans for f1 and f2 (desk scale)",
              [](std::string& d) {
                  // f1: positive on n = 1 mod 3 through 1120, nonzero on 3 | n through 10^4
                  const long N1 = 10000;
                  auto f1 = detail::c_series_integer(EtaSpec::parse("1^-1 2^10 3^-1 4^-4"), N1);
                  for (long n = 1; n <= 1120; ++n) {
                      if (n % 3 != 1) continue;
                      if (mpz_sgn(f1[n].get_mpz_t()) <= 0) {
                          d = "f1 not positive at n=" + std::to_string(n);
                          return false;
                      }
                  }
                  for (long n = 3; n <= N1; n += 3) {
                      if (mpz_sgn(f1[n].get_mpz_t()) == 0) {
                          d = "f1 vanishes at n=" + std::to_string(n);
                          return false;
                      }
                  }
                  // f2: no zeros on n = 1 mod 3 through 5*10^4
                  const long N2 = 50000;
                  auto f2 = detail::c_series_integer(EtaSpec::parse("1^7 2^-2 3^-1"), N2);
                  ScanReport rep = scan_nonvanishing(ScanTarget::f2, 3, 1, N2, 2, 309400, &f2);
                  if (!rep.pass) {
                      d = "f2 vanishes at n=" + std::to_string(rep.zeros.front());
                      return false;
                  }
                  // spot check of the sufficient criterion G2(n)^2 > 64 => a2(n) != 0
                  std::mt19937 rng(309400);
                  std::uniform_int_distribution<long> pick(1, N2 / 3);
                  for (int i = 0; i < 1000; ++i) {
                      long n = 3 * pick(rng) + 1;
                      if (n > N2) continue;
                      if (growth_G_squared(GrowthG::G2, n) > rat(64) &&
                          mpz_sgn(f2[n].get_mpz_t()) == 0) {
                          d = "G2 criterion violated at n=" + std::to_string(n);
                          return false;
                      }
                  }
                  // the 2 mod 3 class identifies a2 with +-8 sqrt2 i c1
                  const QuadScalar eight_s2i(rat(0), rat(8), -2);
                  for (long n = 2; n <= 5000; n += 3) {
                      QuadScalar c1 = newform_coeff_closed(NewformId::g1, n);
                      QuadScalar expect = (n % 2 == 1 ? eight_s2i : -eight_s2i) * c1;
                      if (!(QuadScalar(rat(f2[n])) == expect)) {
                          d = "a2 / c1 relation fails at n=" + std::to_string(n);
                          return false;
                      }
                  }
                  if (std::getenv("ETAQ_ACCEPTANCE_EXTENDED")) {
                      ScanReport full = scan_nonvanishing(ScanTarget::f2, 3, 1, 309400, 2);
                      if (!full.pass) {
                          d = "extended f2 scan found a zero at n=" +
                              std::to_string(full.zeros.front());
                          return false;
                      }
                      d = "extended 309400 scan included";
                  }
                  return true;
              });

    criterion(12, "negative controls fail with a located first mismatch and exit code 1",
              [](std::string& d) {
                  int seen = 0;
                  for (const auto& rec : registry()) {
                      if (!rec.negative_control) continue;
                      ++seen;
                      IdentityRecord r = rec;
                      r.extra_check_limit = 200;
                      VerificationReport rep = verify_identity(r, 200);
                      if (rep.pass || !rep.mismatch) {
                          d = rec.id + " did not fail with a mismatch";
                          return false;
                      }
                  }
                  if (seen != 3) {
                      d = "expected 3 negative controls, found " + std::to_string(seen);
                      return false;
                  }
#ifdef ETAQ_CLI_PATH
                  for (const char* id :
                       {"NEG-L31A-SIGN", "NEG-L52B-SIGN", "NEG-THREESQ-11"}) {
                      std::string cmd = std::string(ETAQ_CLI_PATH) + " verify " + id +
                                        " --limit 120 > /dev/null 2>&1";
                      int status = std::system(cmd.c_str());
                      int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
                      if (code != 1) {
                          d = std::string(id) + " exited " + std::to_string(code) +
                              ", expected 1";
                          return false;
                      }
                  }
#endif
                  return true;
              });

    std::printf("==========================================================\n");
    std::printf(" %d of 12 criteria passed\n", 12 - failures);
    std::printf("==========================================================\n");
    return failures;
}
