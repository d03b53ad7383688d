// test_dynamics.cc

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "doctest.h"
#include "entropic/dynamics.h"
#include "entropic/oracle.h"

using namespace entropic;

namespace {

// single-replica periodic 2D lattice links, test-local construction
std::vector<Link> square_links(int L, int Lt) {
  std::vector<Link> links;
  auto idx = [&](int t, int x) { return t * L + x; };
  for (int t = 0; t < Lt; ++t)
    for (int x = 0; x < L; ++x) {
      links.push_back({idx(t, x), idx(t, (x + 1) % L), LinkClass::Bulk});
      links.push_back({idx(t, x), idx((t + 1) % Lt, x), LinkClass::Bulk});
    }
  return links;
}

}  // namespace

TEST_CASE("reduced energy") {
  auto links = square_links(3, 3);
  CouplingAssignment couplings(links.size(), 0.7);
  SpinConfiguration up(9, 1);
  CHECK(reduced_energy(up, links, couplings) ==
        doctest::Approx(-0.7 * links.size()).epsilon(1e-14));

  CouplingAssignment zero(links.size(), 0.0);
  SpinConfiguration mixed = up;
  mixed[0] = mixed[4] = -1;
  CHECK(reduced_energy(mixed, links, zero) == 0.0);

  std::vector<Link> one{{0, 1, LinkClass::Bulk}};
  CHECK(reduced_energy({+1, -1}, one, {0.5}) == doctest::Approx(0.5));

  CHECK_THROWS_AS(reduced_energy(up, links, {0.1}), std::invalid_argument);
}

TEST_CASE("flip delta matches full recomputation") {
  auto links = square_links(4, 4);
  CouplingAssignment couplings(links.size());
  CounterRng rng(7, 0);
  for (double& c : couplings) c = 0.8 * rng.next_double();
  IsingSystem sys(links, couplings, 16);
  SpinConfiguration spins = sys.random_configuration(rng);
  for (int s = 0; s < 16; ++s) {
    const double before = sys.reduced_energy(spins);
    SpinConfiguration flipped = spins;
    flipped[s] = -flipped[s];
    const double after = sys.reduced_energy(flipped);
    CHECK(sys.flip_delta(spins, s) == doctest::Approx(after - before).epsilon(1e-12));
  }
}

TEST_CASE("zero coupling resamples spins independently") {
  auto links = square_links(4, 4);
  IsingSystem sys(links, CouplingAssignment(links.size(), 0.0), 16);
  CounterRng rng(11, 0);
  SpinConfiguration spins(16, 1);
  // spin 0 should be +1 and -1 each about half the time
  int ups = 0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    sys.swendsen_wang_update(spins, rng);
    if (spins[0] == 1) ++ups;
  }
  CHECK(std::abs(ups - n / 2.0) < 4.0 * std::sqrt(n / 4.0));
}

TEST_CASE("strong coupling makes one cluster: global flip only") {
  auto links = square_links(3, 3);
  IsingSystem sys(links, CouplingAssignment(links.size(), 50.0), 9);
  CounterRng rng(3, 5);
  SpinConfiguration spins(9, 1);
  int flips = 0;
  for (int i = 0; i < 200; ++i) {
    SpinConfiguration before = spins;
    sys.swendsen_wang_update(spins, rng);
    bool all_same = true;
    for (int s = 0; s < 9; ++s) all_same &= (spins[s] == spins[0]);
    CHECK(all_same);
    if (spins[0] != before[0]) ++flips;
  }
  CHECK(flips > 50);
  CHECK(flips < 150);
}

TEST_CASE("metropolis accepts free flips") {
  std::vector<Link> one{{0, 1, LinkClass::Bulk}};
  IsingSystem sys(one, {0.0}, 2);
  CounterRng rng(1, 1);
  SpinConfiguration spins{1, 1};
  SpinConfiguration before = spins;
  sys.metropolis_sweep(spins, rng);
  CHECK(spins[0] == -before[0]);  // zero field: always accepted
  CHECK(spins[1] == -before[1]);
}

TEST_CASE("SW and Metropolis sample the right distribution on 16 spins") {
  const int L = 4, Lt = 4;
  auto links = square_links(L, Lt);
  CouplingAssignment couplings(links.size(), 0.44);
  const double exact = exact_mean_energy(links, couplings, 16);

  for (bool use_sw : {true, false}) {
    IsingSystem sys(links, couplings, 16);
    CounterRng rng(17, use_sw ? 0 : 1);
    SpinConfiguration spins = sys.random_configuration(rng);
    for (int i = 0; i < 500; ++i) sys.swendsen_wang_update(spins, rng);

    const int n = 20000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
      if (use_sw)
        sys.swendsen_wang_update(spins, rng);
      else
        sys.metropolis_sweep(spins, rng);
      const double e = sys.reduced_energy(spins);
      sum += e;
      sumsq += e * e;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    // allow for autocorrelation with a generous effective-sample reduction
    const double stderr_eff = std::sqrt(var / n * 20.0);
    INFO((use_sw ? "SW" : "Metropolis"), ": ", mean, " vs ", exact, " +- ", stderr_eff);
    CHECK(std::abs(mean - exact) < 3.0 * stderr_eff);
  }
}

TEST_CASE("determinism: same seed and stream, same trajectory") {
  auto links = square_links(4, 4);
  CouplingAssignment couplings(links.size(), 0.3);
  for (int rep = 0; rep < 2; ++rep) {
    IsingSystem sys(links, couplings, 16);
    CounterRng rng(99, 7);
    SpinConfiguration spins = sys.random_configuration(rng);
    for (int i = 0; i < 50; ++i) sys.swendsen_wang_update(spins, rng);
    static SpinConfiguration first;
    if (rep == 0)
      first = spins;
    else
      CHECK(first == spins);
  }
}
