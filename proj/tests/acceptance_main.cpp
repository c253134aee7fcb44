// Acceptance suite: one line per criterion, every tolerance pinned in code.
// Exit status is the number of failed criteria.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "anosov/io.hpp"
#include "anosov/local_product.hpp"
#include "anosov/rng.hpp"
#include "anosov/symbolic.hpp"

#ifndef ANOSOV_CLI_PATH
#define ANOSOV_CLI_PATH "anosov"
#endif

using namespace anosov;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& run) {
    std::string detail;
    bool ok = false;
    try {
        ok = run(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %d. %s%s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

std::vector<TorusPoint> noisy_orbit(const ToralAutomorphism& f, Rng& rng, long long window,
                                    double defect_cap) {
    std::vector<TorusPoint> pts(static_cast<size_t>(2 * window + 1));
    pts[0] = TorusPoint(rng.uniform(), rng.uniform());
    for (size_t i = 1; i < pts.size(); ++i) {
        const double ang = rng.uniform(0.0, 6.283185307179586);
        const double r = defect_cap * rng.uniform();
        const TorusPoint img = apply(f, pts[i - 1]);
        pts[i] = TorusPoint(img.x() + r * std::cos(ang), img.y() + r * std::sin(ang));
    }
    return pts;
}

}  // namespace

int main() {
    const ToralAutomorphism f = make_automorphism({2, 1, 1, 1});

    // shared partition run: requested beta 0.1, built at beta/2
    const ConstantsBudget pipeline_budget = geometric_budget(f, 0.05);
    const Cover cover = build_cover(f, pipeline_budget);
    const MarkovPartition partition = build_partition(f, cover);
    const TransitionMatrix A = transition_matrix(f, partition);

    criterion(1, "shadowing bound: 200 pseudo-orbits, delta 1e-3, N 50, dist <= 1.62e-3",
              [&](std::string& detail) {
                  Rng rng(42);
                  const double beta_bound = 1.62e-3;
                  int bad = 0;
                  double worst = 0.0;
                  for (int rep = 0; rep < 200; ++rep) {
                      const auto q = make_pseudo_orbit(f, noisy_orbit(f, rng, 50, 1e-3));
                      if (q.delta > 1e-3) return false;
                      const ShadowResult res = shadow(f, q);
                      worst = std::max(worst, res.beta_certified);
                      if (res.beta_certified > beta_bound) ++bad;
                      if (!verify_shadow(f, q, res.point, beta_bound)) ++bad;
                      // independent distance audit of the certified orbit
                      for (long long n = -q.window; n <= q.window; ++n) {
                          const auto& d = res.deviation(n, q.window);
                          const TorusPoint xn = offset_point(f, q.at(n), d.du, d.ds);
                          if (torus_distance(f, xn, q.at(n)) > beta_bound) ++bad;
                          if (n < q.window) {
                              const auto& d1 = res.deviation(n + 1, q.window);
                              const TorusPoint xn1 = offset_point(f, q.at(n + 1), d1.du, d1.ds);
                              if (torus_distance(f, apply(f, xn), xn1) > 1e-12) ++bad;
                          }
                      }
                  }
                  detail = "max certified beta " + std::to_string(worst);
                  return bad == 0;
              });

    criterion(2, "bracket identities over 1000 pairs within delta", [&](std::string& detail) {
        const ConstantsBudget b = make_budget(f, 0.004);
        Rng rng(7);
        int bad = 0;
        for (int i = 0; i < 1000; ++i) {
            const TorusPoint x(rng.uniform(), rng.uniform());
            if (!(bracket(f, b, x, x) == x)) ++bad;  // [x,x] = x exact
            const TorusPoint y =
                offset_point(f, x, rng.uniform(-4e-3, 4e-3), rng.uniform(-4e-3, 4e-3));
            if (torus_distance(f, x, y) >= b.delta) continue;
            const TorusPoint z = bracket(f, b, x, y);
            if (std::fabs(displacement(f, x, z).du) > 1e-12) ++bad;  // z in W^s(x)
            if (std::fabs(displacement(f, y, z).ds) > 1e-12) ++bad;  // z in W^u(y)
            const TorusPoint lhs = apply(f, z);
            const TorusPoint rhs = bracket(f, b, apply(f, x), apply(f, y));
            if (torus_distance(f, lhs, rhs) > 1e-12) ++bad;  // f[x,y] = [fx,fy]
        }
        detail = std::to_string(bad) + " residual violations";
        return bad == 0;
    });

    criterion(3, "partition validity at beta 0.1: exact areas, disjoint, proper, diam < 0.1",
              [&](std::string& detail) {
                  QuadVal total;
                  for (const auto& c : partition.cells) {
                      if (!is_proper(c)) return false;
                      total += area(f, c);
                  }
                  const bool area_ok = total == QuadVal::integer(1);
                  // pairwise interior intersection area exactly zero
                  bool disjoint = true;
                  std::vector<TorusPoint> centers;
                  std::vector<double> diams;
                  for (const auto& c : partition.cells) {
                      centers.push_back(base_point(f, c));
                      diams.push_back(diameter(f, c));
                  }
                  for (size_t i = 0; i < partition.cells.size() && disjoint; ++i)
                      for (size_t j = i + 1; j < partition.cells.size() && disjoint; ++j) {
                          if (torus_distance(f, centers[i], centers[j]) >
                              (diams[i] + diams[j]) / 2 + 1e-9)
                              continue;
                          if (interiors_overlap(f, partition.cells[i], partition.cells[j]))
                              disjoint = false;
                      }
                  detail = std::to_string(partition.cells.size()) +
                           " cells, diameter " + std::to_string(partition.diameter);
                  return area_ok && disjoint && partition.diameter < 0.1;
              });

    MarkovReport markov_rep;
    criterion(4, "Markov conditions: 100 samples per admissible pair, zero violations",
              [&](std::string& detail) {
                  markov_rep = verify_markov(f, partition, 100, 42);
                  detail = std::to_string(markov_rep.admissible_pairs) + " pairs, " +
                           std::to_string(markov_rep.samples_checked) + " samples";
                  if (markov_rep.pair_violations || markov_rep.sample_violations) return false;
                  // negative control: a perturbed cell edge must be caught
                  MarkovPartition broken = partition;
                  broken.cells[1].s_range.hi =
                      broken.cells[1].s_range.hi + QuadVal::rational(1, 1024);
                  const MarkovReport neg = verify_markov(f, broken, 4, 43);
                  const bool caught = neg.pair_violations + neg.sample_violations > 0 ||
                                      !neg.stable_boundary_invariant ||
                                      !neg.unstable_boundary_invariant;
                  if (!caught) detail += "; negative control missed";
                  return caught;
              });

    criterion(5, "boundary invariance: f(stable) inside, f(unstable) onto, exact",
              [&](std::string& detail) {
                  detail = std::to_string(markov_rep.boundary_stable_faces) + " stable faces, " +
                           std::to_string(markov_rep.boundary_unstable_faces) + " unstable";
                  return markov_rep.stable_boundary_invariant &&
                         markov_rep.unstable_boundary_invariant;
              });

    criterion(6, "cylinder decay: 100 words, diam K_N within 2*diam*lambda^(N-1), N=5..15",
              [&](std::string& detail) {
                  const double lam = f.contraction;
                  int bad = 0;
                  double worst_ratio = 0.0;
                  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
                      const ItineraryWindow w = random_admissible_word(A, 15, seed);
                      for (long long N = 5; N <= 15; ++N) {
                          ItineraryWindow sub;
                          sub.window = N;
                          sub.word.assign(w.word.begin() + (15 - N), w.word.end() - (15 - N));
                          const CylinderIntersection K = cylinder(f, partition, A, sub);
                          if (K.box.u_range.lo > K.box.u_range.hi) ++bad;  // emptiness guard
                          const double bound =
                              2.0 * partition.diameter * std::pow(lam, static_cast<double>(N - 1));
                          worst_ratio = std::max(worst_ratio, K.diameter / bound);
                          if (K.diameter > bound) ++bad;
                      }
                  }
                  detail = "worst diam/bound " + std::to_string(worst_ratio);
                  return bad == 0;
              });

    criterion(7, "semiconjugation: residual <= 1e-6 over 100 words; round trips within diam K_N",
              [&](std::string& detail) {
                  double worst = 0.0;
                  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
                      const ItineraryWindow w = random_admissible_word(A, 15, seed);
                      worst = std::max(worst, semiconjugacy_residual(f, partition, A, w));
                  }
                  if (worst > 1e-6) {
                      detail = "worst residual " + std::to_string(worst);
                      return false;
                  }
                  const InjectivityReport rep = injectivity_check(f, partition, A, 1000, 15, 42);
                  detail = "worst residual " + std::to_string(worst) + ", " +
                           std::to_string(rep.checked) + " round trips, max err " +
                           std::to_string(rep.max_roundtrip_error);
                  return rep.violations == 0 && rep.checked > 900;
              });

    criterion(8, "Perron eigenvalue within 1e-3 of lambda_u", [&](std::string& detail) {
        const double perron = perron_eigenvalue(A);
        detail = "perron " + std::to_string(perron) + " vs " + std::to_string(f.lambda_u);
        return std::fabs(perron - 2.6180339887) <= 1e-3;
    });

    criterion(9, "determinism: two seeded cmd_build runs byte-identical", [&](std::string& detail) {
        namespace fs = std::filesystem;
        const fs::path base = fs::temp_directory_path() / "anosov_acceptance";
        fs::remove_all(base);
        fs::create_directories(base);
        const std::string cli = ANOSOV_CLI_PATH;
        for (const char* run : {"a", "b"}) {
            const std::string cmd = cli + " build --matrix 2,1,1,1 --beta 0.1 --samples 20" +
                                    " --seed 42 --out " + (base / run).string() +
                                    " > /dev/null 2>&1";
            if (std::system(cmd.c_str()) != 0) {
                detail = "cmd_build failed";
                return false;
            }
        }
        for (const char* name : {"partition.json", "matrix.csv", "report.txt"}) {
            if (read_file((base / "a" / name).string()) !=
                read_file((base / "b" / name).string())) {
                detail = std::string(name) + " differs";
                return false;
            }
        }
        return true;
    });

    std::printf("%s: %d/9 criteria passed\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                9 - failures);
    return failures;
}
