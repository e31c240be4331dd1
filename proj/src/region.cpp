#include "pnsynth/region.hpp"

#include <algorithm>
#include <climits>
#include <set>

#include "pnsynth/error.hpp"

namespace pnsynth {

SeparationProblem ssp(StateId s1, StateId s2) { return {SeparationProblem::Kind::SSP, s1, s2, 0}; }
SeparationProblem essp(StateId s, LabelId a) { return {SeparationProblem::Kind::ESSP, s, 0, a}; }

std::string describe(const Lts& lts, const SeparationProblem& p) {
    if (p.kind == SeparationProblem::Kind::SSP)
        return "SSP(" + lts.state_name(p.s1) + ", " + lts.state_name(p.s2) + ")";
    return "ESSP(" + lts.state_name(p.s1) + ", " + lts.label_name(p.label) + ")";
}

std::vector<SeparationProblem> enumerate_ssp(const Lts& lts) {
    std::vector<SeparationProblem> r;
    const auto n = static_cast<StateId>(lts.num_states());
    r.reserve(std::size_t(n) * (n - 1) / 2);
    for (StateId i = 0; i < n; ++i)
        for (StateId j = i + 1; j < n; ++j) r.push_back(ssp(i, j));
    return r;
}

std::vector<SeparationProblem> enumerate_essp(const Lts& lts) {
    std::vector<SeparationProblem> r;
    for (StateId s = 0; s < lts.num_states(); ++s) {
        std::vector<bool> on(lts.num_labels(), false);
        for (auto& a : lts.out(s)) on[a.label] = true;
        for (LabelId l = 0; l < lts.num_labels(); ++l)
            if (!on[l]) r.push_back(essp(s, l));
    }
    return r;
}

ConstraintSystem base_constraints(const Lts& lts) {
    const std::size_t ns = lts.num_states(), nl = lts.num_labels();
    ConstraintSystem sys;
    for (StateId s = 0; s < ns; ++s) sys.variables.push_back("rho(" + lts.state_name(s) + ")");
    for (LabelId l = 0; l < nl; ++l) sys.variables.push_back("B(" + lts.label_name(l) + ")");
    for (LabelId l = 0; l < nl; ++l) sys.variables.push_back("F(" + lts.label_name(l) + ")");
    for (auto& a : lts.arcs()) {
        const std::size_t b = ns + a.label, f = ns + nl + a.label;
        sys.rows.push_back({{{a.src, 1}, {b, -1}}, Relation::Ge, 0});
        if (a.src == a.dst)
            sys.rows.push_back({{{f, -1}, {b, 1}}, Relation::Eq, 0});
        else
            sys.rows.push_back({{{a.dst, 1}, {a.src, -1}, {f, -1}, {b, 1}}, Relation::Eq, 0});
    }
    return sys;
}

static SparseRow sparse(const Constraint& c) {
    SparseRow r;
    for (auto& [v, k] : c.terms) {
        auto& x = r[v];
        x += k;
        if (sgn(x) == 0) r.erase(v);
    }
    return r;
}

static std::unique_ptr<PresolvedSystem> presolve(const ConstraintSystem& sys) {
    std::vector<SparseRow> eqs;
    std::vector<std::pair<SparseRow, mpq_class>> ineqs;
    for (auto& c : sys.rows) {
        if (c.rel == Relation::Eq) {
            if (c.rhs != 0) throw InputError("only homogeneous equalities are supported");
            eqs.push_back(sparse(c));
        } else {
            ineqs.emplace_back(sparse(c), c.rhs);
        }
    }
    return std::make_unique<PresolvedSystem>(sys.variables.size(), eqs, ineqs);
}

std::optional<std::vector<mpq_class>> feasible(const ConstraintSystem& system) {
    return presolve(system)->solve({});
}

// rational point -> integer region (scaled by the lcm of denominators)
static Region to_region(const std::vector<mpq_class>& x, std::size_t ns, std::size_t nl) {
    mpz_class l = 1;
    for (auto& v : x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    auto conv = [&](const mpq_class& v) -> Tokens {
        mpz_class z = v.get_num() * (l / v.get_den());
        if (!z.fits_slong_p()) throw Error("region value does not fit in 64 bits");
        return z.get_si();
    };
    Region r;
    r.rho.reserve(ns);
    for (std::size_t s = 0; s < ns; ++s) r.rho.push_back(conv(x[s]));
    for (std::size_t a = 0; a < nl; ++a) r.backward.push_back(conv(x[ns + a]));
    for (std::size_t a = 0; a < nl; ++a) r.forward.push_back(conv(x[ns + nl + a]));
    return r;
}

static std::vector<SparseRow> strict_rows(const Lts& lts, const SeparationProblem& p) {
    const std::size_t ns = lts.num_states();
    if (p.kind == SeparationProblem::Kind::ESSP) {
        if (p.s1 >= ns || p.label >= lts.num_labels()) throw InputError("separation problem out of range");
        return {SparseRow{{ns + p.label, 1}, {p.s1, -1}}};
    }
    if (p.s1 == p.s2 || p.s1 >= ns || p.s2 >= ns) throw InputError("invalid state separation problem");
    return {SparseRow{{p.s1, 1}, {p.s2, -1}}, SparseRow{{p.s2, 1}, {p.s1, -1}}};
}

RegionSolver::RegionSolver(const Lts& lts, bool parallel)
    : lts_(&lts), parallel_(parallel), presolved_(presolve(base_constraints(lts))) {}

std::optional<Region> RegionSolver::attempt(const SparseRow& strict) const {
    auto x = presolved_->solve({{strict, 1}}, parallel_, &stats_);
    if (!x) return std::nullopt;
    return to_region(*x, lts_->num_states(), lts_->num_labels());
}

std::optional<Region> RegionSolver::solve(const SeparationProblem& p) const {
    for (auto& row : strict_rows(*lts_, p))
        if (auto r = attempt(row)) return r;
    return std::nullopt;
}

std::optional<Region> solve_separation(const Lts& lts, const ConstraintSystem& base, const SeparationProblem& p) {
    auto sys = presolve(base);
    for (auto& row : strict_rows(lts, p))
        if (auto x = sys->solve({{row, 1}})) return to_region(*x, lts.num_states(), lts.num_labels());
    return std::nullopt;
}

bool region_solves(const Region& r, const SeparationProblem& p) {
    if (p.kind == SeparationProblem::Kind::SSP) return r.rho[p.s1] != r.rho[p.s2];
    return r.rho[p.s1] < r.backward[p.label];
}

bool is_region(const Lts& lts, const Region& r) {
    if (r.rho.size() != lts.num_states() || r.backward.size() != lts.num_labels() ||
        r.forward.size() != lts.num_labels())
        return false;
    auto nonneg = [](const std::vector<Tokens>& v) { return std::all_of(v.begin(), v.end(), [](Tokens x) { return x >= 0; }); };
    if (!nonneg(r.rho) || !nonneg(r.backward) || !nonneg(r.forward)) return false;
    for (auto& a : lts.arcs()) {
        if (r.rho[a.src] < r.backward[a.label]) return false;
        if (r.rho[a.dst] - r.rho[a.src] != r.forward[a.label] - r.backward[a.label]) return false;
    }
    return true;
}

std::size_t find_solving_serial(const std::vector<Region>& regions, const SeparationProblem& p) {
    for (std::size_t i = 0; i < regions.size(); ++i)
        if (region_solves(regions[i], p)) return i;
    return regions.size();
}

std::size_t find_solving_parallel(const std::vector<Region>& regions, const SeparationProblem& p) {
    const long n = static_cast<long>(regions.size());
    long best = n;
#pragma omp parallel for reduction(min : best) schedule(static)
    for (long i = 0; i < n; ++i)
        if (i < best && region_solves(regions[i], p)) best = i;
    return static_cast<std::size_t>(best);
}

PetriNet net_from_regions(const Lts& lts, const std::vector<Region>& regions) {
    PetriNet net;
    std::set<std::string> taken(lts.label_names().begin(), lts.label_names().end());
    std::vector<PlaceId> places;
    for (std::size_t k = 0; k < regions.size(); ++k) {
        auto name = fresh_name("p" + std::to_string(k), taken);
        taken.insert(name);
        places.push_back(net.add_place(name, regions[k].rho[lts.initial()]));
    }
    for (LabelId l = 0; l < lts.num_labels(); ++l) {
        TransId t = net.add_transition(lts.label_name(l));
        for (std::size_t k = 0; k < regions.size(); ++k) {
            net.set_pre(places[k], t, regions[k].backward[l]);
            net.set_post(t, places[k], regions[k].forward[l]);
        }
    }
    return net;
}

}  // namespace pnsynth
