// Times every OpenMP kernel under the serial and the parallel policy and
// checks that both produce the same bits. Pass --quick for a short run.

#include "freegamma/convolution.hpp"
#include "freegamma/equilibrium.hpp"
#include "freegamma/finite_free.hpp"
#include "freegamma/gibbs.hpp"
#include "freegamma/measures.hpp"
#include "freegamma/parallel.hpp"
#include "freegamma/rmt.hpp"

#include <chrono>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <vector>

using namespace fg;

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
auto timed(F&& f, double& seconds) {
  const auto start = Clock::now();
  auto result = f();
  seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

int mismatches = 0;

void bench(const std::string& name, const std::function<std::vector<double>(ExecutionPolicy)>& kernel) {
  double ts = 0.0, tp = 0.0;
  const auto serial = timed([&] { return kernel(ExecutionPolicy::serial); }, ts);
  const auto parallel = timed([&] { return kernel(ExecutionPolicy::parallel); }, tp);
  const bool same = same_bits(serial, parallel);
  if (!same) ++mismatches;
  std::cout << std::left << std::setw(28) << name << std::right << std::fixed << std::setprecision(3) << std::setw(10) << ts
            << std::setw(10) << tp << std::setw(9) << std::setprecision(2) << (tp > 0 ? ts / tp : 0.0)
            << (same ? "   identical" : "   MISMATCH") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  std::cout << "threads: " << thread_count() << "\n";
  std::cout << std::left << std::setw(28) << "kernel" << std::right << std::setw(10) << "serial" << std::setw(10) << "parallel"
            << std::setw(9) << "speedup" << "   bits\n";

  const auto p = GFGParams::make(1, 1, 1.5);

  bench("cdf table", [&](ExecutionPolicy pol) {
    const CdfTable table(gfg_measure(p), quick ? 256 : 4096, pol);
    std::vector<double> out;
    for (int i = 0; i <= 100; ++i) out.push_back(table.quantile(i / 100.0));
    return out;
  });

  bench("identity catalog", [&](ExecutionPolicy pol) {
    std::vector<double> out;
    for (IdentityId id : kIdentityCatalog)
      for (const auto& ip : default_parameter_sets(id))
        out.push_back(verify_identity(id, ip, default_grid(id, ip, quick ? 50 : 400), 1e-10, pol).max_abs_deviation);
    return out;
  });

  bench("gibbs cdf table", [&](ExecutionPolicy pol) {
    const GibbsCdf cdf(p, quick ? 1000 : 10000, pol);
    return cdf.cumulative();
  });

  bench("gibbs sampler", [&](ExecutionPolicy pol) {
    return classical_sampler(claw::Gibbs{p}, quick ? 20000 : 400000, RngStream{0xC0FFEE, 0}, pol);
  });

  bench("cross log energy", [&](ExecutionPolicy pol) {
    const auto m = gfg_measure(p);
    return std::vector<double>{cross_log_energy(m, m, 1e-10, pol).value};
  });

  if (!quick)
    bench("maximality probe", [&](ExecutionPolicy pol) {
      std::vector<double> out;
      for (const auto& r : maximality_probe(GFGParams::make(1, 1, 1), default_perturbations(), 1e-6, pol).probes)
        out.push_back(r.gap);
      return out;
    });

  bench("finite free convergence", [&](ExecutionPolicy pol) {
    std::vector<double> out;
    for (const auto& r : convergence_study(GFGParams::make(1, 1, 2), quick ? std::vector<int>{8, 16} : std::vector<int>{16, 32, 64, 128}, pol).rows)
      out.push_back(r.w1);
    return out;
  });

  bench("random matrix seeds", [&](ExecutionPolicy pol) {
    std::vector<double> out;
    for (const auto& c : verify_rmt(IdentityId::AddSemigroup, quick ? 100 : 400, {1, 2, 3}, 0.07, pol).comparisons)
      out.push_back(c.ks);
    return out;
  });

  std::cout << (mismatches == 0 ? "all kernels bit-identical\n" : "serial and parallel results differ\n");
  return mismatches == 0 ? 0 : 1;
}
