// Serial vs OpenMP timings for the three parallel kernels. Each pair is also
// checked for identical results; a mismatch makes the run exit 1.
//   bench_kernels [rows cols reps]

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <random>

#include "pnsynth/bench.hpp"
#include "pnsynth/io.hpp"
#include "pnsynth/region.hpp"
#include "pnsynth/simplex.hpp"
#include "pnsynth/synthesis.hpp"

using namespace pnsynth;
using Clock = std::chrono::steady_clock;

namespace {

bool mismatch = false;

template <class F>
double best_ms(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = Clock::now();
        f();
        best = std::min(best, std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
    }
    return best;
}

void row(const std::string& what, double serial, double parallel, bool same) {
    std::cout << std::left << std::setw(34) << what << std::right << std::setw(12) << std::fixed << std::setprecision(3)
              << serial << std::setw(12) << parallel << std::setw(9) << std::setprecision(2)
              << (parallel > 0 ? serial / parallel : 0) << "  " << (same ? "same" : "DIFFER") << '\n';
    if (!same) mismatch = true;
}

Tableau random_tableau(std::size_t m, std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> v(-50, 50);
    Tableau t;
    t.t.assign(m + 1, std::vector<mpz_class>(n + 1));
    for (auto& r : t.t)
        for (auto& x : r) x = v(rng);
    t.d = 7;
    for (std::size_t i = 0; i < m; ++i) t.basic.push_back(n + i);
    t.nonbasic.push_back(0);
    for (std::size_t j = 0; j < n; ++j) t.nonbasic.push_back(j);
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t m = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 400;
    const std::size_t n = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 400;
    const int reps = argc > 3 ? std::atoi(argv[3]) : 3;
    std::cout << "threads " << omp_get_max_threads() << ", best of " << reps << " (ms)\n";
    std::cout << std::left << std::setw(34) << "kernel" << std::right << std::setw(12) << "serial" << std::setw(12)
              << "parallel" << std::setw(9) << "speedup" << '\n';

    {
        // a few chained pivots so coefficients grow like in a real run
        auto base = random_tableau(m, n, 1);
        Tableau a, b;
        auto chain = [&](Tableau& t, auto pivot) {
            t = base;
            for (std::size_t k = 0; k < 4; ++k) {
                std::size_t r = k * 7 % m, c = 1 + k * 13 % n;
                if (t.t[r][c] == 0) t.t[r][c] = 1;
                pivot(t, r, c);
            }
        };
        double s = best_ms(reps, [&] { chain(a, pivot_serial); });
        double p = best_ms(reps, [&] { chain(b, pivot_parallel); });
        row("pivot row update " + std::to_string(m) + "x" + std::to_string(n), s, p, a.t == b.t && a.d == b.d);
    }

    {
        Lts l = read_lts(std::string(PNSYNTH_DATA_DIR) + "/TS21.lts");
        auto probs = enumerate_essp(l);
        auto ssps = enumerate_ssp(l);
        probs.insert(probs.end(), ssps.begin(), ssps.end());
        RegionSolver solver(l, false);
        // a cache mostly full of regions that solve nothing, then the useful ones
        Region zero{std::vector<Tokens>(l.num_states(), 0), std::vector<Tokens>(l.num_labels(), 0),
                    std::vector<Tokens>(l.num_labels(), 0)};
        std::vector<Region> regions(4096, zero);
        for (auto& p : enumerate_essp(l))
            if (auto r = solver.solve(p)) regions.push_back(*r);
        std::vector<std::size_t> ra, rb;
        double s = best_ms(reps, [&] {
            ra.clear();
            for (auto& p : probs) ra.push_back(find_solving_serial(regions, p));
        });
        double p = best_ms(reps, [&] {
            rb.clear();
            for (auto& q : probs) rb.push_back(find_solving_parallel(regions, q));
        });
        row("region-cache scan (" + std::to_string(regions.size()) + " regions)", s, p, ra == rb);
    }

    {
        FamilySpec spec{Family::Star, read_lts(std::string(PNSYNTH_DATA_DIR) + "/TS21.lts"), 8, {}};
        Lts l = generate(spec);
        SynthesisOptions so, po;
        so.parallel = false;
        SynthesisReport a, b;
        double s = best_ms(reps, [&] { a = run_strategy("artic", l, so); });
        double p = best_ms(reps, [&] { b = run_strategy("artic", l, po); });
        bool same = a.solved() && b.solved() && emit_pn(*a.net) == emit_pn(*b.net);
        row("component syntheses (star TS21 x8)", s, p, same);
    }
    return mismatch ? 1 : 0;
}
