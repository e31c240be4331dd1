#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "pnsynth/lts.hpp"
#include "pnsynth/synthesis.hpp"

namespace pnsynth {

enum class Family { Star, Daisy, Caterpillar, ProductPower };

Family parse_family(const std::string& name);  // star|daisy|caterpillar|product_power
std::string to_string(Family f);

struct FamilySpec {
    Family family = Family::Star;
    Lts component;
    std::size_t n = 1;
    std::vector<std::string> attach;  // anchors in the component (daisy / caterpillar)
};

// copy k of a system: every state and label gets the suffix "_k"
Lts suffixed_copy(const Lts& lts, std::size_t k);
Lts generate(const FamilySpec& spec);
std::size_t expected_states(const FamilySpec& spec);

enum class GainKind { Product, Articulation };
double predicted_gain(GainKind kind, double h, std::size_t k, double states);

struct BenchRecord {
    std::string family;
    std::size_t n = 0;
    std::size_t states = 0;
    std::string strategy;
    double elapsed_ms = 0;  // median
    std::size_t repetitions = 0;
    bool verified = false;
    std::string outcome;
};

// strategy names: mono, factor, artic, mixed, sum
SynthesisReport run_strategy(const std::string& strategy, const Lts& lts, const SynthesisOptions& opts = {});

std::vector<BenchRecord> run_bench_at(const FamilySpec& spec, const std::vector<std::size_t>& ns,
                                      const std::vector<std::string>& strategies, std::size_t repetitions = 3);
// every n from 1 to spec.n
std::vector<BenchRecord> run_bench(const FamilySpec& spec, const std::vector<std::string>& strategies,
                                   std::size_t repetitions = 3);

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);

enum class FitModel { Power, Exponential };
// power: y = a x^b -> (a, b); exponential: y = a b^x -> (a, b)
std::pair<double, double> fit(const std::vector<std::pair<double, double>>& data, FitModel model);

double median(std::vector<double> v);

}  // namespace pnsynth
