#include "pnsynth/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "pnsynth/articulation.hpp"
#include "pnsynth/decomposer.hpp"
#include "pnsynth/error.hpp"
#include "pnsynth/factorization.hpp"

namespace pnsynth {

Family parse_family(const std::string& name) {
    if (name == "star") return Family::Star;
    if (name == "daisy") return Family::Daisy;
    if (name == "caterpillar") return Family::Caterpillar;
    if (name == "product_power" || name == "product") return Family::ProductPower;
    throw InputError("unknown family " + name);
}

std::string to_string(Family f) {
    switch (f) {
        case Family::Star: return "star";
        case Family::Daisy: return "daisy";
        case Family::Caterpillar: return "caterpillar";
        case Family::ProductPower: return "product_power";
    }
    return "?";
}

Lts suffixed_copy(const Lts& lts, std::size_t k) {
    const std::string sfx = "_" + std::to_string(k);
    std::vector<std::string> states, labels;
    for (auto& s : lts.state_names()) states.push_back(s + sfx);
    for (auto& l : lts.label_names()) labels.push_back(l + sfx);
    return Lts(std::move(states), std::move(labels), lts.initial(), lts.arcs());
}

static std::vector<std::string> anchors(const FamilySpec& spec) {
    if (!spec.attach.empty()) {
        for (auto& a : spec.attach) spec.component.state(a);  // validates
        return spec.attach;
    }
    std::vector<std::string> r;
    for (StateId s = 0; s < spec.component.num_states(); ++s)
        if (s != spec.component.initial()) r.push_back(spec.component.state_name(s));
    if (r.empty()) r.push_back(spec.component.state_name(spec.component.initial()));
    return r;
}

Lts generate(const FamilySpec& spec) {
    if (spec.n < 1) throw InputError("family size must be at least 1");
    const Lts& c = spec.component;
    Lts x = suffixed_copy(c, 1);
    const std::string init = c.state_name(c.initial());
    switch (spec.family) {
        case Family::Star:
            for (std::size_t k = 2; k <= spec.n; ++k) x = articulate_lts(x, init + "_1", suffixed_copy(c, k));
            break;
        case Family::Daisy: {
            auto at = anchors(spec);
            for (std::size_t k = 2; k <= spec.n; ++k)
                x = articulate_lts(x, at[(k - 2) % at.size()] + "_1", suffixed_copy(c, k));
            break;
        }
        case Family::Caterpillar: {
            const std::string a = anchors(spec).front();
            for (std::size_t k = 2; k <= spec.n; ++k)
                x = articulate_lts(x, a + "_" + std::to_string(k - 1), suffixed_copy(c, k));
            break;
        }
        case Family::ProductPower:
            for (std::size_t k = 2; k <= spec.n; ++k) x = product(x, suffixed_copy(c, k));
            break;
    }
    return x;
}

std::size_t expected_states(const FamilySpec& spec) {
    const std::size_t s = spec.component.num_states();
    if (spec.family == Family::ProductPower) {
        std::size_t r = 1;
        for (std::size_t k = 0; k < spec.n; ++k) r *= s;
        return r;
    }
    return s * spec.n - spec.n + 1;
}

double predicted_gain(GainKind kind, double h, std::size_t k, double states) {
    if (h <= 0 || k < 1) throw InputError("gain needs h > 0 and k >= 1");
    const double kk = static_cast<double>(k);
    if (kind == GainKind::Product) return std::pow(states, h * (1.0 - 1.0 / kk)) / kk;
    return std::pow(kk, h - 1.0);
}

SynthesisReport run_strategy(const std::string& strategy, const Lts& lts, const SynthesisOptions& opts) {
    if (strategy == "mono") return synthesize(lts, opts);
    if (strategy == "factor") return synthesize_factorized(lts, opts);
    if (strategy == "artic") return synthesize_articulated(lts, opts);
    if (strategy == "mixed") return synthesize_mixed(lts, opts);
    throw InputError("unknown strategy " + strategy);
}

double median(std::vector<double> v) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

static double ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<BenchRecord> run_bench_at(const FamilySpec& spec, const std::vector<std::size_t>& ns,
                                      const std::vector<std::string>& strategies, std::size_t repetitions) {
    if (repetitions < 1) throw InputError("at least one repetition is needed");
    std::vector<BenchRecord> out;
    SynthesisOptions opts;
    for (auto n : ns) {
        FamilySpec s = spec;
        s.n = n;
        const Lts lts = generate(s);
        for (auto& strat : strategies) {
            BenchRecord rec{to_string(spec.family), n, lts.num_states(), strat, 0, repetitions, false, ""};
            std::vector<double> times;
            bool ok = true;
            std::string outcome;
            for (std::size_t r = 0; r < repetitions; ++r) {
                try {
                    if (strat == "sum") {
                        // one synthesis per component copy
                        auto t0 = std::chrono::steady_clock::now();
                        std::vector<SynthesisReport> parts;
                        for (std::size_t k = 1; k <= n; ++k) parts.push_back(synthesize(suffixed_copy(spec.component, k), opts));
                        times.push_back(ms(t0));
                        outcome = "Solved";
                        for (std::size_t k = 0; k < parts.size(); ++k) {
                            if (!parts[k].solved()) {
                                outcome = to_string(parts[k].outcome);
                                ok = false;
                            } else if (r == 0) {
                                ok = ok && verify(*parts[k].net, suffixed_copy(spec.component, k + 1));
                            }
                        }
                    } else {
                        auto t0 = std::chrono::steady_clock::now();
                        auto rep = run_strategy(strat, lts, opts);
                        times.push_back(ms(t0));
                        outcome = to_string(rep.outcome);
                        if (!rep.solved())
                            ok = false;
                        else if (r == 0)
                            ok = ok && verify(*rep.net, lts);
                    }
                } catch (const std::exception& e) {
                    ok = false;
                    outcome = std::string("error: ") + e.what();
                    break;
                }
            }
            rec.elapsed_ms = median(times);
            rec.verified = ok;
            rec.outcome = outcome;
            out.push_back(rec);
        }
    }
    return out;
}

std::vector<BenchRecord> run_bench(const FamilySpec& spec, const std::vector<std::string>& strategies,
                                   std::size_t repetitions) {
    std::vector<std::size_t> ns;
    for (std::size_t n = 1; n <= spec.n; ++n) ns.push_back(n);
    return run_bench_at(spec, ns, strategies, repetitions);
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
    out << "family,n,states,strategy,elapsed_ms,verified\n";
    for (auto& r : records)
        out << r.family << ',' << r.n << ',' << r.states << ',' << r.strategy << ',' << r.elapsed_ms << ','
            << (r.verified ? "true" : "false") << '\n';
}

std::pair<double, double> fit(const std::vector<std::pair<double, double>>& data, FitModel model) {
    if (data.size() < 3) throw DegenerateData("a fit needs at least three points");
    const double x0 = data.front().first;
    if (std::all_of(data.begin(), data.end(), [&](auto& p) { return p.first == x0; }))
        throw DegenerateData("all x values are equal");
    std::vector<double> xs, ys;
    for (auto& [x, y] : data) {
        if (y <= 0 || (model == FitModel::Power && x <= 0)) throw DegenerateData("fit needs positive data");
        xs.push_back(model == FitModel::Power ? std::log(x) : x);
        ys.push_back(std::log(y));
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = sxy / sxx;
    const double a = std::exp(my - slope * mx);
    return {a, model == FitModel::Power ? slope : std::exp(slope)};
}

}  // namespace pnsynth
