#include "pnsynth/simplex.hpp"

#include <set>
#include <stdexcept>

namespace pnsynth {

namespace {

// rows other than r: t'ij = (p tij - tic trj) / d for j != c, t'ic unchanged
inline void update_row(std::vector<mpz_class>& row, const std::vector<mpz_class>& prow, std::size_t c,
                       const mpz_class& p, const mpz_class& d, mpz_class& tmp) {
    const mpz_class tic = row[c];
    const std::size_t n = row.size();
    if (sgn(tic) == 0) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == c || sgn(row[j]) == 0) continue;
            row[j] *= p;
            mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), d.get_mpz_t());
        }
        return;
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (j == c) continue;
        tmp = p * row[j];
        mpz_submul(tmp.get_mpz_t(), tic.get_mpz_t(), prow[j].get_mpz_t());
        mpz_divexact(row[j].get_mpz_t(), tmp.get_mpz_t(), d.get_mpz_t());
    }
}

void finish_pivot(Tableau& tab, std::size_t r, std::size_t c, const mpz_class& p) {
    auto& prow = tab.t[r];
    for (std::size_t j = 0; j < prow.size(); ++j)
        if (j != c) prow[j] = -prow[j];
    prow[c] = tab.d;
    tab.d = p;
    if (sgn(p) < 0) {
        for (auto& row : tab.t)
            for (auto& v : row) v = -v;
        tab.d = -p;
    }
    std::swap(tab.basic[r], tab.nonbasic[c]);
}

}  // namespace

void pivot_serial(Tableau& tab, std::size_t r, std::size_t c) {
    const mpz_class p = tab.t[r][c];
    const auto& prow = tab.t[r];
    mpz_class tmp;
    for (std::size_t i = 0; i < tab.t.size(); ++i)
        if (i != r) update_row(tab.t[i], prow, c, p, tab.d, tmp);
    finish_pivot(tab, r, c, p);
}

void pivot_parallel(Tableau& tab, std::size_t r, std::size_t c) {
    const mpz_class p = tab.t[r][c];
    const auto& prow = tab.t[r];
    const long rows = static_cast<long>(tab.t.size());
#pragma omp parallel
    {
        mpz_class tmp;
#pragma omp for schedule(static)
        for (long i = 0; i < rows; ++i)
            if (static_cast<std::size_t>(i) != r) update_row(tab.t[i], prow, c, p, tab.d, tmp);
    }
    finish_pivot(tab, r, c, p);
}

std::optional<std::vector<mpq_class>> solve_inequalities(const std::vector<std::vector<mpz_class>>& g,
                                                         const std::vector<mpz_class>& h, std::size_t n,
                                                         bool parallel, SimplexStats* stats) {
    const std::size_t m = g.size();
    std::vector<mpq_class> zero(n, 0);
    std::size_t worst = m;
    for (std::size_t i = 0; i < m; ++i)
        if (sgn(h[i]) > 0 && (worst == m || h[i] > h[worst])) worst = i;
    if (worst == m) return zero;  // the origin already works

    // small tableaux are not worth a thread team
    const bool par = parallel && (m + 1) * (n + 2) >= 4096;
    auto pivot = par ? pivot_parallel : pivot_serial;

    const std::size_t x0 = n + m;
    Tableau tab;
    tab.t.assign(m + 1, std::vector<mpz_class>(n + 2));
    tab.basic.resize(m);
    tab.nonbasic.resize(n + 2);
    for (std::size_t i = 0; i < m; ++i) {
        tab.t[i][0] = -h[i];
        for (std::size_t j = 0; j < n; ++j) tab.t[i][j + 1] = g[i][j];
        tab.t[i][n + 1] = 1;
        tab.basic[i] = n + i;
    }
    tab.t[m][n + 1] = -1;
    for (std::size_t j = 0; j < n; ++j) tab.nonbasic[j + 1] = j;
    tab.nonbasic[n + 1] = x0;

    pivot(tab, worst, n + 1);
    std::size_t count = 1;
    mpz_class lhs, rhs;
    for (;;) {
        const auto& obj = tab.t[m];
        std::size_t c = 0;
        for (std::size_t j = 1; j < n + 2; ++j)
            if (sgn(obj[j]) > 0 && (c == 0 || tab.nonbasic[j] < tab.nonbasic[c])) c = j;
        if (c == 0) break;
        std::size_t r = m;
        for (std::size_t i = 0; i < m; ++i) {
            if (sgn(tab.t[i][c]) >= 0) continue;
            if (r == m) {
                r = i;
                continue;
            }
            // t_i0 / -t_ic < t_r0 / -t_rc  <=>  t_r0 t_ic < t_i0 t_rc
            lhs = tab.t[i][0] * tab.t[r][c];
            rhs = tab.t[r][0] * tab.t[i][c];
            int order = cmp(rhs, lhs);
            if (order < 0 || (order == 0 && tab.basic[r] != x0 &&
                            (tab.basic[i] == x0 || tab.basic[i] < tab.basic[r])))
                r = i;
        }
        if (r == m) throw std::logic_error("auxiliary problem unbounded");
        const bool x0_leaves = tab.basic[r] == x0;
        pivot(tab, r, c);
        ++count;
        if (x0_leaves) break;
    }
    if (stats) stats->pivots += count;

    std::vector<mpq_class> y = zero;
    for (std::size_t i = 0; i < m; ++i) {
        if (tab.basic[i] == x0 && sgn(tab.t[i][0]) > 0) return std::nullopt;
        if (tab.basic[i] < n) {
            y[tab.basic[i]] = mpq_class(tab.t[i][0], tab.d);
            y[tab.basic[i]].canonicalize();
        }
    }
    return y;
}

namespace {

void add_scaled(SparseRow& into, const SparseRow& e, const mpq_class& k) {
    for (auto& [v, c] : e) {
        auto& x = into[v];
        x += k * c;
        if (sgn(x) == 0) into.erase(v);
    }
}

}  // namespace

PresolvedSystem::PresolvedSystem(std::size_t nvars, const std::vector<SparseRow>& equalities,
                                 const std::vector<std::pair<SparseRow, mpq_class>>& inequalities)
    : nvars_(nvars), free_pos_(nvars, -1), expr_(nvars) {
    std::vector<bool> pivot(nvars, false);
    std::vector<std::size_t> pivots;
    for (auto& eq : equalities) {
        SparseRow r;
        for (auto& [v, c] : eq) {
            if (pivot[v])
                add_scaled(r, expr_[v], c);
            else
                add_scaled(r, SparseRow{{v, 1}}, c);
        }
        if (r.empty()) continue;
        auto [p, cp] = *r.begin();
        mpq_class k = -1 / mpq_class(cp);
        r.erase(p);
        SparseRow e;
        add_scaled(e, r, k);
        for (auto q : pivots) {
            auto it = expr_[q].find(p);
            if (it == expr_[q].end()) continue;
            mpq_class f = it->second;
            expr_[q].erase(it);
            add_scaled(expr_[q], e, f);
        }
        expr_[p] = std::move(e);
        pivot[p] = true;
        pivots.push_back(p);
    }
    for (std::size_t v = 0; v < nvars; ++v)
        if (!pivot[v]) {
            free_pos_[v] = static_cast<long>(free_.size());
            free_.push_back(v);
            expr_[v] = SparseRow{{v, 1}};
        }

    std::set<std::pair<std::vector<mpz_class>, mpz_class>> seen;
    auto keep = [&](const SparseRow& row, const mpq_class& rhs) {
        std::vector<mpz_class> out;
        mpz_class orhs;
        if (!normalize(row, rhs, out, orhs)) {
            infeasible_ = true;
            return;
        }
        if (out.empty()) return;
        if (seen.emplace(out, orhs).second) {
            rows_.push_back(std::move(out));
            rhs_.push_back(std::move(orhs));
        }
    };
    for (auto p : pivots) keep(SparseRow{{p, 1}}, 0);
    for (auto& [row, rhs] : inequalities) keep(row, rhs);
}

bool PresolvedSystem::normalize(const SparseRow& orig, const mpq_class& rhs, std::vector<mpz_class>& out,
                                mpz_class& out_rhs) const {
    SparseRow r;
    for (auto& [v, c] : orig) add_scaled(r, expr_[v], c);
    out.clear();
    if (r.empty()) return sgn(rhs) <= 0;
    mpz_class l = rhs.get_den();
    for (auto& [v, c] : r) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    out.assign(free_.size(), 0);
    mpz_class g = 0;
    for (auto& [v, c] : r) {
        mpz_class x = c.get_num() * (l / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        out[static_cast<std::size_t>(free_pos_[v])] = std::move(x);
    }
    out_rhs = rhs.get_num() * (l / rhs.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out_rhs.get_mpz_t());
    for (auto& x : out)
        if (sgn(x) != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(out_rhs.get_mpz_t(), out_rhs.get_mpz_t(), g.get_mpz_t());
    return true;
}

std::optional<std::vector<mpq_class>> PresolvedSystem::solve(
    const std::vector<std::pair<SparseRow, mpq_class>>& extra, bool parallel, SimplexStats* stats) const {
    if (infeasible_) return std::nullopt;
    std::vector<std::vector<mpz_class>> g = rows_;
    std::vector<mpz_class> h = rhs_;
    for (auto& [row, rhs] : extra) {
        std::vector<mpz_class> out;
        mpz_class orhs;
        if (!normalize(row, rhs, out, orhs)) return std::nullopt;
        if (out.empty()) continue;
        g.push_back(std::move(out));
        h.push_back(std::move(orhs));
    }
    auto y = solve_inequalities(g, h, free_.size(), parallel, stats);
    if (!y) return std::nullopt;
    std::vector<mpq_class> x(nvars_, 0);
    for (std::size_t v = 0; v < nvars_; ++v)
        for (auto& [f, c] : expr_[v]) x[v] += c * (*y)[static_cast<std::size_t>(free_pos_[f])];
    return x;
}

}  // namespace pnsynth
