#include "pnsynth/lts.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "pnsynth/error.hpp"

namespace pnsynth {

Lts::Lts() : states_{"i"} { index(); }

Lts::Lts(std::vector<std::string> states, std::vector<std::string> labels, const std::string& initial,
         const std::vector<NamedArc>& arcs) {
    std::unordered_map<std::string, StateId> sidx;
    std::unordered_map<std::string, LabelId> lidx;
    auto add_state = [&](const std::string& n) {
        auto [it, fresh] = sidx.emplace(n, static_cast<StateId>(states_.size()));
        if (fresh) states_.push_back(n);
        return it->second;
    };
    auto add_label = [&](const std::string& n) {
        auto [it, fresh] = lidx.emplace(n, static_cast<LabelId>(labels_.size()));
        if (fresh) labels_.push_back(n);
        return it->second;
    };
    for (auto& s : states) add_state(s);
    for (auto& l : labels) add_label(l);
    StateId init = add_state(initial);
    std::vector<Arc> raw;
    raw.reserve(arcs.size());
    for (auto& [s, l, t] : arcs) {
        StateId a = add_state(s);
        LabelId b = add_label(l);
        raw.push_back({a, b, add_state(t)});
    }
    *this = Lts(std::move(states_), std::move(labels_), init, std::move(raw));
}

Lts::Lts(std::vector<std::string> states, std::vector<std::string> labels, StateId initial,
         std::vector<Arc> arcs)
    : states_(std::move(states)), initial_(initial) {
    if (states_.empty()) throw InputError("transition system without states");
    if (initial_ >= states_.size()) throw UnknownState("initial state out of range");
    // alphabetical labels, remap arcs
    std::vector<LabelId> order(labels.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](LabelId x, LabelId y) { return labels[x] < labels[y]; });
    std::vector<LabelId> remap(labels.size());
    labels_.reserve(labels.size());
    for (LabelId k = 0; k < order.size(); ++k) {
        remap[order[k]] = k;
        labels_.push_back(labels[order[k]]);
    }
    for (auto& a : arcs) {
        if (a.src >= states_.size() || a.dst >= states_.size() || a.label >= labels_.size())
            throw InputError("arc endpoint out of range");
        a.label = remap[a.label];
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    arcs_ = std::move(arcs);
    index();
}

void Lts::index() {
    state_index_.clear();
    label_index_.clear();
    for (StateId s = 0; s < states_.size(); ++s)
        if (!state_index_.emplace(states_[s], s).second) throw InputError("duplicate state name " + states_[s]);
    for (LabelId l = 0; l < labels_.size(); ++l)
        if (!label_index_.emplace(labels_[l], l).second) throw InputError("duplicate label name " + labels_[l]);
    std::size_t n = states_.size();
    out_off_.assign(n + 1, 0);
    in_off_.assign(n + 1, 0);
    for (auto& a : arcs_) {
        ++out_off_[a.src + 1];
        ++in_off_[a.dst + 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
        out_off_[i + 1] += out_off_[i];
        in_off_[i + 1] += in_off_[i];
    }
    in_arcs_ = arcs_;
    std::sort(in_arcs_.begin(), in_arcs_.end(), [](const Arc& x, const Arc& y) {
        return std::tie(x.dst, x.label, x.src) < std::tie(y.dst, y.label, y.src);
    });
}

std::vector<std::string> Lts::names_of(const std::vector<StateId>& ids) const {
    std::vector<std::string> r;
    r.reserve(ids.size());
    for (auto s : ids) r.push_back(states_[s]);
    return r;
}

std::optional<StateId> Lts::find_state(std::string_view name) const {
    auto it = state_index_.find(std::string(name));
    if (it == state_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<LabelId> Lts::find_label(std::string_view name) const {
    auto it = label_index_.find(std::string(name));
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
}

StateId Lts::state(std::string_view name) const {
    if (auto s = find_state(name)) return *s;
    throw UnknownState("unknown state " + std::string(name));
}

LabelId Lts::label(std::string_view name) const {
    if (auto l = find_label(name)) return *l;
    throw InputError("unknown label " + std::string(name));
}

std::optional<StateId> Lts::succ(StateId s, LabelId l) const {
    for (auto& a : out(s))
        if (a.label == l) return a.dst;
    return std::nullopt;
}

std::optional<StateId> Lts::pred(StateId s, LabelId l) const {
    for (auto& a : in(s))
        if (a.label == l) return a.src;
    return std::nullopt;
}

bool Lts::has_arc(StateId s, LabelId l, StateId t) const {
    auto o = out(s);
    return std::binary_search(o.begin(), o.end(), Arc{s, l, t});
}

std::vector<bool> Lts::label_mask(const LabelSet& labels) const {
    std::vector<bool> m(labels_.size(), false);
    for (auto& n : labels)
        if (auto l = find_label(n)) m[*l] = true;
    return m;
}

bool is_forward_deterministic(const Lts& lts) {
    // arcs sorted by (src,label,dst): a clash shows up as neighbours
    auto& a = lts.arcs();
    for (std::size_t i = 1; i < a.size(); ++i)
        if (a[i].src == a[i - 1].src && a[i].label == a[i - 1].label) return false;
    return true;
}

bool is_backward_deterministic(const Lts& lts) {
    for (StateId s = 0; s < lts.num_states(); ++s) {
        auto in = lts.in(s);
        for (std::size_t i = 1; i < in.size(); ++i)
            if (in[i].label == in[i - 1].label) return false;
    }
    return true;
}

bool is_deterministic(const Lts& lts) {
    return is_forward_deterministic(lts) && is_backward_deterministic(lts);
}

static std::vector<bool> reach_mask(const Lts& lts, StateId from, const std::vector<bool>& use, Mode mode) {
    std::vector<bool> seen(lts.num_states(), false);
    std::vector<StateId> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
        StateId s = stack.back();
        stack.pop_back();
        for (auto& a : lts.out(s))
            if (use[a.label] && !seen[a.dst]) {
                seen[a.dst] = true;
                stack.push_back(a.dst);
            }
        if (mode == Mode::General)
            for (auto& a : lts.in(s))
                if (use[a.label] && !seen[a.src]) {
                    seen[a.src] = true;
                    stack.push_back(a.src);
                }
    }
    return seen;
}

bool is_totally_reachable(const Lts& lts) {
    auto seen = reach_mask(lts, lts.initial(), std::vector<bool>(lts.num_labels(), true), Mode::Directed);
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

std::vector<StateId> reachable(const Lts& lts, StateId from, const LabelSet& labels, Mode mode) {
    if (from >= lts.num_states()) throw UnknownState("state out of range");
    auto seen = reach_mask(lts, from, lts.label_mask(labels), mode);
    std::vector<StateId> r;
    for (StateId s = 0; s < seen.size(); ++s)
        if (seen[s]) r.push_back(s);
    return r;
}

Lts restrict_from(const Lts& lts, StateId from, const LabelSet& labels, Mode mode) {
    for (auto& l : labels)
        if (!lts.find_label(l)) throw InputError("restriction to unknown label " + l);
    auto use = lts.label_mask(labels);
    auto seen = reach_mask(lts, from, use, mode);
    std::vector<StateId> remap(lts.num_states(), 0);
    std::vector<std::string> names;
    for (StateId s = 0; s < lts.num_states(); ++s)
        if (seen[s]) {
            remap[s] = static_cast<StateId>(names.size());
            names.push_back(lts.state_name(s));
        }
    std::vector<std::string> lnames;
    std::vector<LabelId> lremap(lts.num_labels(), 0);
    for (LabelId l = 0; l < lts.num_labels(); ++l)
        if (use[l]) {
            lremap[l] = static_cast<LabelId>(lnames.size());
            lnames.push_back(lts.label_name(l));
        }
    std::vector<Arc> arcs;
    for (auto& a : lts.arcs())
        if (use[a.label] && seen[a.src] && seen[a.dst]) arcs.push_back({remap[a.src], lremap[a.label], remap[a.dst]});
    return Lts(std::move(names), std::move(lnames), remap[from], std::move(arcs));
}

Lts restrict(const Lts& lts, const LabelSet& labels, Mode mode) {
    return restrict_from(lts, lts.initial(), labels, mode);
}

ParikhVector parikh(const GeneralWord& word) {
    ParikhVector v;
    for (auto& x : word) v[x.label] += x.reverse ? -1 : 1;
    return v;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
    if (!taken.count(base)) return base;
    for (std::size_t k = 1;; ++k) {
        std::string c = base + "_" + std::to_string(k);
        if (!taken.count(c)) return c;
    }
}

static void check_disjoint_labels(const Lts& a, const Lts& b) {
    for (auto& l : b.label_names())
        if (a.find_label(l)) throw LabelOverlap("label " + l + " occurs on both sides");
}

Lts product(const Lts& a, const Lts& b) {
    check_disjoint_labels(a, b);
    const std::size_t nb = b.num_states();
    std::vector<std::string> names;
    std::set<std::string> taken;
    names.reserve(a.num_states() * nb);
    for (StateId x = 0; x < a.num_states(); ++x)
        for (StateId y = 0; y < nb; ++y) {
            auto n = fresh_name(a.state_name(x) + "_" + b.state_name(y), taken);
            taken.insert(n);
            names.push_back(std::move(n));
        }
    std::vector<std::string> labels = a.label_names();
    const LabelId shift = static_cast<LabelId>(labels.size());
    labels.insert(labels.end(), b.label_names().begin(), b.label_names().end());
    std::vector<Arc> arcs;
    arcs.reserve(a.num_arcs() * nb + b.num_arcs() * a.num_states());
    auto id = [nb](StateId x, StateId y) { return static_cast<StateId>(x * nb + y); };
    for (auto& e : a.arcs())
        for (StateId y = 0; y < nb; ++y) arcs.push_back({id(e.src, y), e.label, id(e.dst, y)});
    for (StateId x = 0; x < a.num_states(); ++x)
        for (auto& e : b.arcs()) arcs.push_back({id(x, e.src), e.label + shift, id(x, e.dst)});
    return Lts(std::move(names), std::move(labels), id(a.initial(), b.initial()), std::move(arcs));
}

Lts articulate_lts(const Lts& a, const std::string& s, const Lts& b) {
    check_disjoint_labels(a, b);
    StateId joint = a.state(s);
    std::vector<std::string> names = a.state_names();
    std::set<std::string> taken(names.begin(), names.end());
    std::vector<StateId> remap(b.num_states());
    for (StateId y = 0; y < b.num_states(); ++y) {
        if (y == b.initial()) {
            remap[y] = joint;
            continue;
        }
        auto n = fresh_name(b.state_name(y), taken);
        taken.insert(n);
        remap[y] = static_cast<StateId>(names.size());
        names.push_back(std::move(n));
    }
    std::vector<std::string> labels = a.label_names();
    const LabelId shift = static_cast<LabelId>(labels.size());
    labels.insert(labels.end(), b.label_names().begin(), b.label_names().end());
    std::vector<Arc> arcs = a.arcs();
    for (auto& e : b.arcs()) arcs.push_back({remap[e.src], e.label + shift, remap[e.dst]});
    return Lts(std::move(names), std::move(labels), a.initial(), std::move(arcs));
}

std::vector<StateId> adjacency(const Lts& lts, const LabelSet& labels) {
    auto use = lts.label_mask(labels);
    std::vector<bool> hit(lts.num_states(), false);
    bool any = false;
    for (auto& a : lts.arcs())
        if (use[a.label]) hit[a.src] = hit[a.dst] = any = true;
    if (!any) return {lts.initial()};
    std::vector<StateId> r;
    for (StateId s = 0; s < hit.size(); ++s)
        if (hit[s]) r.push_back(s);
    return r;
}

std::optional<StateBijection> are_isomorphic(const Lts& a, const Lts& b) {
    for (const Lts* x : {&a, &b})
        if (!is_deterministic(*x) || !is_totally_reachable(*x))
            throw UnsupportedInput("isomorphism check needs deterministic, totally reachable systems");
    if (a.num_states() != b.num_states() || a.num_arcs() != b.num_arcs() || a.label_names() != b.label_names())
        return std::nullopt;
    // same sorted label names, so label ids coincide
    constexpr StateId none = static_cast<StateId>(-1);
    StateBijection fwd(a.num_states(), none), bwd(b.num_states(), none);
    std::deque<StateId> queue{a.initial()};
    fwd[a.initial()] = b.initial();
    bwd[b.initial()] = a.initial();
    while (!queue.empty()) {
        StateId x = queue.front();
        queue.pop_front();
        StateId y = fwd[x];
        auto oa = a.out(x), ob = b.out(y);
        if (oa.size() != ob.size()) return std::nullopt;
        for (std::size_t k = 0; k < oa.size(); ++k) {
            if (oa[k].label != ob[k].label) return std::nullopt;
            StateId x2 = oa[k].dst, y2 = ob[k].dst;
            if (fwd[x2] == none && bwd[y2] == none) {
                fwd[x2] = y2;
                bwd[y2] = x2;
                queue.push_back(x2);
            } else if (fwd[x2] != y2 || bwd[y2] != x2) {
                return std::nullopt;
            }
        }
    }
    return fwd;
}

LabelSet useful_labels(const Lts& lts) {
    LabelSet r;
    for (auto& a : lts.arcs()) r.insert(lts.label_name(a.label));
    return r;
}

Lts without_labels(const Lts& lts, const LabelSet& drop) {
    LabelSet keep;
    for (auto& l : lts.label_names())
        if (!drop.count(l)) keep.insert(l);
    auto use = lts.label_mask(keep);
    std::vector<std::string> lnames;
    std::vector<LabelId> lremap(lts.num_labels(), 0);
    for (LabelId l = 0; l < lts.num_labels(); ++l)
        if (use[l]) {
            lremap[l] = static_cast<LabelId>(lnames.size());
            lnames.push_back(lts.label_name(l));
        }
    std::vector<Arc> arcs;
    for (auto& a : lts.arcs())
        if (use[a.label]) arcs.push_back({a.src, lremap[a.label], a.dst});
    return Lts(lts.state_names(), std::move(lnames), lts.initial(), std::move(arcs));
}

Lts with_loops(const Lts& lts, const std::vector<std::pair<StateId, std::string>>& loops) {
    std::vector<std::string> labels = lts.label_names();
    std::vector<Arc> arcs = lts.arcs();
    for (auto& [s, name] : loops) {
        if (s >= lts.num_states()) throw UnknownState("loop at unknown state");
        auto it = std::find(labels.begin(), labels.end(), name);
        LabelId l = static_cast<LabelId>(it - labels.begin());
        if (it == labels.end()) labels.push_back(name);
        arcs.push_back({s, l, s});
    }
    return Lts(lts.state_names(), std::move(labels), lts.initial(), std::move(arcs));
}

bool is_reversible(const Lts& lts) {
    // every state can get back to the initial one
    std::vector<bool> back(lts.num_states(), false);
    std::vector<StateId> stack{lts.initial()};
    back[lts.initial()] = true;
    while (!stack.empty()) {
        StateId s = stack.back();
        stack.pop_back();
        for (auto& a : lts.in(s))
            if (!back[a.src]) {
                back[a.src] = true;
                stack.push_back(a.src);
            }
    }
    return std::all_of(back.begin(), back.end(), [](bool b) { return b; });
}

}  // namespace pnsynth
