#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pnsynth/lts.hpp"
#include "pnsynth/petri_net.hpp"
#include "pnsynth/simplex.hpp"

namespace pnsynth {

struct Region {
    std::vector<Tokens> rho;       // per state
    std::vector<Tokens> backward;  // per label
    std::vector<Tokens> forward;   // per label
    bool operator==(const Region&) const = default;
};

struct SeparationProblem {
    enum class Kind { SSP, ESSP };
    Kind kind = Kind::SSP;
    StateId s1 = 0;
    StateId s2 = 0;     // SSP only
    LabelId label = 0;  // ESSP only
    bool operator==(const SeparationProblem&) const = default;
};

SeparationProblem ssp(StateId s1, StateId s2);
SeparationProblem essp(StateId s, LabelId a);
std::string describe(const Lts& lts, const SeparationProblem& p);

enum class Relation { Ge, Eq };

struct Constraint {
    std::vector<std::pair<std::size_t, long>> terms;
    Relation rel = Relation::Ge;
    long rhs = 0;
};

// All variables are implicitly nonnegative.
struct ConstraintSystem {
    std::vector<std::string> variables;
    std::vector<Constraint> rows;
};

std::vector<SeparationProblem> enumerate_ssp(const Lts& lts);
std::vector<SeparationProblem> enumerate_essp(const Lts& lts);

// variable layout: rho(s) = s, backward(a) = |S| + a, forward(a) = |S| + |T| + a
ConstraintSystem base_constraints(const Lts& lts);
std::optional<std::vector<mpq_class>> feasible(const ConstraintSystem& system);

// Base system presolved once per transition system; one instance serves
// every separation problem of that system.
class RegionSolver {
public:
    explicit RegionSolver(const Lts& lts, bool parallel = false);
    std::optional<Region> solve(const SeparationProblem& p) const;
    std::size_t pivots() const { return stats_.pivots; }
    std::size_t columns() const { return presolved_->num_free(); }
    std::size_t rows() const { return presolved_->num_rows(); }

private:
    std::optional<Region> attempt(const SparseRow& strict) const;

    const Lts* lts_;
    bool parallel_;
    std::unique_ptr<PresolvedSystem> presolved_;
    mutable SimplexStats stats_;
};

std::optional<Region> solve_separation(const Lts& lts, const ConstraintSystem& base, const SeparationProblem& p);

bool region_solves(const Region& r, const SeparationProblem& p);
bool is_region(const Lts& lts, const Region& r);

// first cached region solving p, or regions.size()
std::size_t find_solving_serial(const std::vector<Region>& regions, const SeparationProblem& p);
std::size_t find_solving_parallel(const std::vector<Region>& regions, const SeparationProblem& p);

PetriNet net_from_regions(const Lts& lts, const std::vector<Region>& regions);

}  // namespace pnsynth
