#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace pnsynth {

// Integer (fraction-free) dictionary: basic variable i equals
// (t[i][0] + sum_j t[i][j] * nonbasic_j) / d. The last row is the objective.
struct Tableau {
    std::vector<std::vector<mpz_class>> t;
    mpz_class d = 1;
    std::vector<std::size_t> basic;     // variable id per row (objective row excluded)
    std::vector<std::size_t> nonbasic;  // variable id per column, column 0 unused
};

// Exchange basic row r with nonbasic column c. Both variants produce
// identical tableaux; the parallel one splits the row updates across threads.
void pivot_serial(Tableau& tab, std::size_t r, std::size_t c);
void pivot_parallel(Tableau& tab, std::size_t r, std::size_t c);

struct SimplexStats {
    std::size_t pivots = 0;
};

// Feasibility of { g_i . y >= h_i for all rows, y >= 0 } by the
// auxiliary-variable first phase with Bland's rule. Returns a rational point.
std::optional<std::vector<mpq_class>> solve_inequalities(const std::vector<std::vector<mpz_class>>& g,
                                                         const std::vector<mpz_class>& h, std::size_t nvars,
                                                         bool parallel = false, SimplexStats* stats = nullptr);

using SparseRow = std::map<std::size_t, mpq_class>;

// Linear system over nonnegative variables with equality rows eliminated.
// Every original variable becomes an affine-free expression over the kept
// ("free") variables; inequalities are rewritten over those.
class PresolvedSystem {
public:
    PresolvedSystem(std::size_t nvars, const std::vector<SparseRow>& equalities,
                    const std::vector<std::pair<SparseRow, mpq_class>>& inequalities);

    std::size_t num_original() const { return nvars_; }
    std::size_t num_free() const { return free_.size(); }
    std::size_t num_rows() const { return rows_.size(); }
    bool trivially_infeasible() const { return infeasible_; }

    // Add `extra` (coef . x >= rhs over original variables) and solve.
    // Returns values for the original variables.
    std::optional<std::vector<mpq_class>> solve(const std::vector<std::pair<SparseRow, mpq_class>>& extra,
                                                bool parallel = false, SimplexStats* stats = nullptr) const;

private:
    // integer row over free variables plus right-hand side; false if 0 >= positive
    bool normalize(const SparseRow& orig, const mpq_class& rhs, std::vector<mpz_class>& out, mpz_class& out_rhs) const;

    std::size_t nvars_;
    std::vector<std::size_t> free_;               // original ids of kept variables
    std::vector<long> free_pos_;                  // original id -> position in free_ or -1
    std::vector<SparseRow> expr_;                 // original var -> expression over original free ids
    std::vector<std::vector<mpz_class>> rows_;    // normalized, deduplicated
    std::vector<mpz_class> rhs_;
    bool infeasible_ = false;
};

}  // namespace pnsynth
