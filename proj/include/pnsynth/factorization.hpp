#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pnsynth/lts.hpp"
#include "pnsynth/synthesis.hpp"

namespace pnsynth {

// Blocks sorted by their smallest label.
using LabelPartition = std::vector<LabelSet>;
using LabelPair = std::pair<std::string, std::string>;  // first < second

LabelPartition canonical(LabelPartition p);

std::set<LabelPair> gdiam_violations(const Lts& lts);
LabelPartition label_classes(const Lts& lts);

struct Factorization {
    std::vector<Lts> factors;
    // state of the input -> state of each factor
    std::vector<std::vector<StateId>> projection;
};

// Throws NotAProduct when the label classes do not recombine into lts.
Factorization factorize(const Lts& lts);
std::vector<Lts> factor(const Lts& lts);

SynthesisReport synthesize_factorized(const Lts& lts, const SynthesisOptions& opts = {});

}  // namespace pnsynth
