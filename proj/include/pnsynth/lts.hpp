#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace pnsynth {

using StateId = std::uint32_t;
using LabelId = std::uint32_t;
using LabelSet = std::set<std::string>;

struct Arc {
    StateId src;
    LabelId label;
    StateId dst;
    auto operator<=>(const Arc&) const = default;
};

enum class Mode { Directed, General };

// Finite labelled transition system. Labels are kept in alphabetical order,
// states in the order they were given (the "discovery" order), arcs sorted by
// (source, label, target). Immutable once built.
class Lts {
public:
    using NamedArc = std::tuple<std::string, std::string, std::string>;

    // One state named "i", no labels.
    Lts();
    Lts(std::vector<std::string> states, std::vector<std::string> labels, const std::string& initial,
        const std::vector<NamedArc>& arcs);
    // index-based; labels may come in any order, arcs refer to that order.
    // Duplicate arcs are merged.
    Lts(std::vector<std::string> states, std::vector<std::string> labels, StateId initial,
        std::vector<Arc> arcs);

    std::size_t num_states() const { return states_.size(); }
    std::size_t num_labels() const { return labels_.size(); }
    std::size_t num_arcs() const { return arcs_.size(); }

    const std::string& state_name(StateId s) const { return states_[s]; }
    const std::string& label_name(LabelId l) const { return labels_[l]; }
    const std::vector<std::string>& state_names() const { return states_; }
    const std::vector<std::string>& label_names() const { return labels_; }
    std::vector<std::string> names_of(const std::vector<StateId>& ids) const;

    std::optional<StateId> find_state(std::string_view name) const;
    std::optional<LabelId> find_label(std::string_view name) const;
    StateId state(std::string_view name) const;  // throws UnknownState
    LabelId label(std::string_view name) const;  // throws InputError

    StateId initial() const { return initial_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    std::span<const Arc> out(StateId s) const {
        return {arcs_.data() + out_off_[s], arcs_.data() + out_off_[s + 1]};
    }
    std::span<const Arc> in(StateId s) const {
        return {in_arcs_.data() + in_off_[s], in_arcs_.data() + in_off_[s + 1]};
    }
    // first successor / predecessor by label (unique when deterministic)
    std::optional<StateId> succ(StateId s, LabelId l) const;
    std::optional<StateId> pred(StateId s, LabelId l) const;
    bool has_arc(StateId s, LabelId l, StateId t) const;

    LabelSet label_set() const { return {labels_.begin(), labels_.end()}; }

    // label id -> selected?
    std::vector<bool> label_mask(const LabelSet& labels) const;

private:
    void index();

    std::vector<std::string> states_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, StateId> state_index_;
    std::unordered_map<std::string, LabelId> label_index_;
    StateId initial_ = 0;
    std::vector<Arc> arcs_;     // by (src,label,dst)
    std::vector<Arc> in_arcs_;  // by (dst,label,src)
    std::vector<std::size_t> out_off_, in_off_;
};

struct SignedLabel {
    std::string label;
    bool reverse = false;
};
using GeneralWord = std::vector<SignedLabel>;
using ParikhVector = std::map<std::string, long>;

// state of a -> state of b
using StateBijection = std::vector<StateId>;

bool is_forward_deterministic(const Lts& lts);
bool is_backward_deterministic(const Lts& lts);
bool is_deterministic(const Lts& lts);
bool is_totally_reachable(const Lts& lts);

// States reachable from `from` using only `labels`; sorted by id.
std::vector<StateId> reachable(const Lts& lts, StateId from, const LabelSet& labels, Mode mode);

// Sub-system induced by the states reachable with `labels` from `from`
// (default: the initial state), which becomes the new initial state.
Lts restrict(const Lts& lts, const LabelSet& labels, Mode mode);
Lts restrict_from(const Lts& lts, StateId from, const LabelSet& labels, Mode mode);

ParikhVector parikh(const GeneralWord& word);

// States are enumerated as a.state * |b| + b.state.
Lts product(const Lts& a, const Lts& b);
Lts articulate_lts(const Lts& a, const std::string& s, const Lts& b);

std::vector<StateId> adjacency(const Lts& lts, const LabelSet& labels);
std::optional<StateBijection> are_isomorphic(const Lts& a, const Lts& b);
LabelSet useful_labels(const Lts& lts);

// small helpers used across modules
Lts without_labels(const Lts& lts, const LabelSet& drop);
Lts with_loops(const Lts& lts, const std::vector<std::pair<StateId, std::string>>& loops);
bool is_reversible(const Lts& lts);

// name, or name_k with the smallest k >= 1 not in `taken`
std::string fresh_name(const std::string& base, const std::set<std::string>& taken);

}  // namespace pnsynth
