#pragma once

#include <optional>
#include <string>

#include "pnsynth/lts.hpp"
#include "pnsynth/synthesis.hpp"
#include "pnsynth/tree.hpp"

namespace pnsynth {

struct AmbiguousForm {
    Lts core;               // input without the loop labels below
    std::string state;      // s1
    LabelSet everywhere;    // loop at every state
    LabelSet at_state;      // loop at s1 only
};

std::optional<AmbiguousForm> ambiguous_form(const Lts& lts);

struct DecomposeOptions {
    bool prefer_articulation = false;  // default: products win when both apply
    bool detect_ambiguous = false;     // emit Ambiguous nodes for genuine ambiguous forms
};

// Throws NotAProduct when the label classes certify unsolvability.
DecompositionTree decompose(const Lts& lts, const DecomposeOptions& opts = {});

SynthesisReport synthesize_mixed(const Lts& lts, const SynthesisOptions& opts = {},
                                 const DecomposeOptions& dopts = {false, true});

}  // namespace pnsynth
