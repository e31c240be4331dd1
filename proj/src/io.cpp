#include "pnsynth/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "pnsynth/error.hpp"

namespace pnsynth {

namespace {

using Kind = ParseError::Kind;

std::vector<std::string> tokens(std::string_view line) {
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    std::vector<std::string> r;
    std::istringstream in{std::string(line)};
    std::string t;
    while (in >> t) r.push_back(t);
    return r;
}

void check_name(const std::string& n, std::size_t line) {
    bool ok = !n.empty() && std::all_of(n.begin(), n.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
    if (!ok) throw ParseError(Kind::Syntax, line, "bad name '" + n + "'");
    if (n.rfind("__", 0) == 0) throw ParseError(Kind::ReservedName, line, "name '" + n + "' uses the reserved prefix __");
}

long parse_int(const std::string& s, std::size_t line) {
    long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw ParseError(Kind::Syntax, line, "expected a number, got '" + s + "'");
    return v;
}

template <class F>
void for_lines(std::string_view text, F&& f) {
    std::size_t no = 0, pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++no;
        auto t = tokens(text.substr(pos, end - pos));
        if (!t.empty()) f(t, no);
        pos = end + 1;
    }
}

}  // namespace

Lts parse_lts(std::string_view text) {
    std::vector<std::string> states, labels;
    std::set<std::string> known_states, known_labels;
    std::vector<Lts::NamedArc> arcs;
    std::set<Lts::NamedArc> seen;
    std::string initial;
    std::size_t last = 0;
    auto state = [&](const std::string& s, std::size_t no) {
        check_name(s, no);
        if (known_states.insert(s).second) states.push_back(s);
    };
    auto label = [&](const std::string& l, std::size_t no) {
        check_name(l, no);
        if (known_labels.insert(l).second) labels.push_back(l);
    };
    for_lines(text, [&](const std::vector<std::string>& t, std::size_t no) {
        last = no;
        if (t[0] == "states") {
            for (std::size_t i = 1; i < t.size(); ++i) state(t[i], no);
        } else if (t[0] == "labels") {
            for (std::size_t i = 1; i < t.size(); ++i) label(t[i], no);
        } else if (t[0] == "initial") {
            if (t.size() != 2) throw ParseError(Kind::Syntax, no, "expected: initial STATE");
            if (!initial.empty()) throw ParseError(Kind::Syntax, no, "initial state given twice");
            state(t[1], no);
            initial = t[1];
        } else if (t[0] == "arc") {
            if (t.size() != 4) throw ParseError(Kind::Syntax, no, "expected: arc SOURCE LABEL TARGET");
            state(t[1], no);
            label(t[2], no);
            state(t[3], no);
            Lts::NamedArc a{t[1], t[2], t[3]};
            if (!seen.insert(a).second) throw ParseError(Kind::DuplicateArc, no, "duplicate arc");
            arcs.push_back(a);
        } else {
            throw ParseError(Kind::Syntax, no, "unknown directive '" + t[0] + "'");
        }
    });
    if (initial.empty()) throw ParseError(Kind::Syntax, last + 1, "missing initial state");
    return Lts(states, labels, initial, arcs);
}

std::string emit_lts(const Lts& lts) {
    std::ostringstream out;
    out << "states";
    for (auto& s : lts.state_names()) out << ' ' << s;
    out << "\nlabels";
    for (auto& l : lts.label_names()) out << ' ' << l;
    out << "\ninitial " << lts.state_name(lts.initial()) << '\n';
    for (auto& a : lts.arcs())  // already in (source, label, target) order
        out << "arc " << lts.state_name(a.src) << ' ' << lts.label_name(a.label) << ' ' << lts.state_name(a.dst) << '\n';
    return out.str();
}

PetriNet parse_pn(std::string_view text) {
    struct ArcLine {
        std::string from, to;
        long w;
        std::size_t line;
    };
    std::vector<std::pair<std::string, long>> places;
    std::vector<std::string> trans;
    std::map<std::string, bool> is_place;
    std::vector<ArcLine> arcs;
    for_lines(text, [&](const std::vector<std::string>& t, std::size_t no) {
        if (t[0] == "place") {
            if (t.size() != 3) throw ParseError(Kind::Syntax, no, "expected: place NAME TOKENS");
            check_name(t[1], no);
            long k = parse_int(t[2], no);
            if (k < 0) throw ParseError(Kind::Syntax, no, "negative token count");
            if (!is_place.emplace(t[1], true).second) throw ParseError(Kind::Syntax, no, "name declared twice");
            places.emplace_back(t[1], k);
        } else if (t[0] == "trans") {
            if (t.size() != 2) throw ParseError(Kind::Syntax, no, "expected: trans NAME");
            check_name(t[1], no);
            if (!is_place.emplace(t[1], false).second) throw ParseError(Kind::Syntax, no, "name declared twice");
            trans.push_back(t[1]);
        } else if (t[0] == "arc") {
            if (t.size() != 3 && t.size() != 4) throw ParseError(Kind::Syntax, no, "expected: arc FROM TO [WEIGHT]");
            long w = t.size() == 4 ? parse_int(t[3], no) : 1;
            if (w < 1) throw ParseError(Kind::Syntax, no, "arc weight must be at least 1");
            arcs.push_back({t[1], t[2], w, no});
        } else {
            throw ParseError(Kind::Syntax, no, "unknown directive '" + t[0] + "'");
        }
    });
    PetriNet net;
    for (auto& [p, k] : places) net.add_place(p, k);
    for (auto& t : trans) net.add_transition(t);
    std::set<std::pair<std::string, std::string>> seen;
    for (auto& a : arcs) {
        auto f = is_place.find(a.from), g = is_place.find(a.to);
        if (f == is_place.end() || g == is_place.end()) throw ParseError(Kind::Syntax, a.line, "arc endpoint not declared");
        if (f->second == g->second) throw ParseError(Kind::Syntax, a.line, "arc must join a place and a transition");
        if (!seen.emplace(a.from, a.to).second) throw ParseError(Kind::DuplicateArc, a.line, "duplicate arc");
        if (f->second)
            net.set_pre(*net.find_place(a.from), *net.find_transition(a.to), a.w);
        else
            net.set_post(*net.find_transition(a.from), *net.find_place(a.to), a.w);
    }
    return net;
}

std::string emit_pn(const PetriNet& net) {
    std::vector<PlaceId> ps(net.num_places());
    std::vector<TransId> ts(net.num_transitions());
    for (PlaceId p = 0; p < ps.size(); ++p) ps[p] = p;
    for (TransId t = 0; t < ts.size(); ++t) ts[t] = t;
    std::sort(ps.begin(), ps.end(), [&](auto x, auto y) { return net.place_name(x) < net.place_name(y); });
    std::sort(ts.begin(), ts.end(), [&](auto x, auto y) { return net.transition_name(x) < net.transition_name(y); });
    std::ostringstream out;
    for (auto p : ps) out << "place " << net.place_name(p) << ' ' << net.initial_marking()[p] << '\n';
    for (auto t : ts) out << "trans " << net.transition_name(t) << '\n';
    std::vector<std::tuple<std::string, std::string, Tokens>> arcs;
    for (auto p : ps)
        for (auto t : ts) {
            if (net.pre(p, t)) arcs.emplace_back(net.place_name(p), net.transition_name(t), net.pre(p, t));
            if (net.post(t, p)) arcs.emplace_back(net.transition_name(t), net.place_name(p), net.post(t, p));
        }
    std::sort(arcs.begin(), arcs.end());
    for (auto& [f, t, w] : arcs) {
        out << "arc " << f << ' ' << t;
        if (w != 1) out << ' ' << w;
        out << '\n';
    }
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

Lts read_lts(const std::string& path) { return parse_lts(read_file(path)); }
PetriNet read_pn(const std::string& path) { return parse_pn(read_file(path)); }

}  // namespace pnsynth
