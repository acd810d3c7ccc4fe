#include "az/linsolve.hpp"

#include <cassert>

namespace az {

namespace {

// One row in cleared polynomial form.
struct PolyRow {
    std::vector<MultiPoly> entries;
    MultiPoly rhs;

    int max_degree() const {
        int d = rhs.total_degree();
        for (const auto& e : entries) d = std::max(d, e.total_degree());
        return d;
    }

    // Rational content is stripped on every update; the full polynomial
    // content only once degrees have grown enough for the gcd fold to pay.
    void strip_content() {
        Rational rc = 0;
        for (const auto& e : entries) rc = rational_gcd(rc, e.content());
        rc = rational_gcd(rc, rhs.content());
        if (rc != 0 && rc != 1) {
            Rational inv = Rational(1) / rc;
            for (auto& e : entries) e = e.scaled(inv);
            rhs = rhs.scaled(inv);
        }
        if (max_degree() <= 25) return;
        MultiPoly g;
        bool first = true;
        auto fold = [&](const MultiPoly& p) {
            if (p.is_zero()) return;
            g = first ? MultiPoly::gcd(p, MultiPoly()) : MultiPoly::gcd(g, p);
            first = false;
        };
        for (const auto& e : entries) fold(e);
        fold(rhs);
        if (first || g.is_one()) return;
        for (auto& e : entries) e = *e.divide_exact(g);
        rhs = *rhs.divide_exact(g);
    }
};

}  // namespace

LinearSolution solve_linear(std::vector<std::vector<RatFunc>> matrix, std::vector<RatFunc> rhs) {
    const size_t rows = matrix.size();
    if (rhs.size() != rows) throw MathError("solve_linear: matrix/rhs size mismatch");
    size_t cols = 0;
    if (rows > 0) {
        cols = matrix[0].size();
        for (const auto& row : matrix)
            if (row.size() != cols) throw MathError("solve_linear: ragged matrix");
    }

    std::vector<PolyRow> work(rows);
    for (size_t i = 0; i < rows; ++i) {
        MultiPoly lcd = MultiPoly::constant(1);
        for (const auto& e : matrix[i])
            if (!e.den().is_one()) lcd = MultiPoly::lcm(lcd, e.den());
        if (!rhs[i].den().is_one()) lcd = MultiPoly::lcm(lcd, rhs[i].den());
        work[i].entries.reserve(cols);
        for (const auto& e : matrix[i])
            work[i].entries.push_back(e.num() * *lcd.divide_exact(e.den()));
        work[i].rhs = rhs[i].num() * *lcd.divide_exact(rhs[i].den());
        work[i].strip_content();
    }

    LinearSolution out;
    std::vector<size_t> pivot_col_of_row;

    size_t pivot_row = 0;
    for (size_t col = 0; col < cols && pivot_row < rows; ++col) {
        size_t sel = pivot_row;
        while (sel < rows && work[sel].entries[col].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(work[sel], work[pivot_row]);

        const MultiPoly pivot = work[pivot_row].entries[col];
        out.pivot_numerators.push_back(pivot);
        for (size_t r = pivot_row + 1; r < rows; ++r) {
            if (work[r].entries[col].is_zero()) continue;
            const MultiPoly factor = work[r].entries[col];
            for (size_t j = 0; j < cols; ++j) {
                if (j == col) {
                    work[r].entries[j] = MultiPoly();
                    continue;
                }
                MultiPoly t = work[r].entries[j] * pivot;
                if (!work[pivot_row].entries[j].is_zero())
                    t -= work[pivot_row].entries[j] * factor;
                work[r].entries[j] = std::move(t);
            }
            work[r].rhs = work[r].rhs * pivot - work[pivot_row].rhs * factor;
            work[r].strip_content();
        }
        pivot_col_of_row.push_back(col);
        ++pivot_row;
    }

    for (size_t r = pivot_row; r < rows; ++r) {
        if (!work[r].rhs.is_zero()) {
            out.consistent = false;
            return out;
        }
    }
    out.consistent = true;

    std::vector<bool> is_pivot_col(cols, false);
    for (size_t c : pivot_col_of_row) is_pivot_col[c] = true;

    // Back-substitution over the field for a given assignment of the free
    // variables (zero except possibly one set to 1).
    auto back_substitute = [&](size_t unit_free_col, bool homogeneous) {
        std::vector<RatFunc> sol(cols, RatFunc());
        if (unit_free_col < cols) sol[unit_free_col] = RatFunc::constant(1);
        for (size_t r = pivot_col_of_row.size(); r-- > 0;) {
            size_t pc = pivot_col_of_row[r];
            RatFunc acc = homogeneous ? RatFunc() : RatFunc(work[r].rhs);
            for (size_t j = pc + 1; j < cols; ++j) {
                if (work[r].entries[j].is_zero() || sol[j].is_zero()) continue;
                acc -= RatFunc(work[r].entries[j]) * sol[j];
            }
            sol[pc] = acc / RatFunc(work[r].entries[pc]);
        }
        return sol;
    };

    out.particular = back_substitute(cols, /*homogeneous=*/false);

    for (size_t col = 0; col < cols; ++col) {
        if (is_pivot_col[col]) continue;
        std::vector<RatFunc> basis = back_substitute(col, /*homogeneous=*/true);
        // scale so the first nonzero coordinate is 1
        for (const auto& entry : basis) {
            if (entry.is_zero()) continue;
            if (!entry.is_one()) {
                RatFunc scale = entry;
                for (auto& e : basis) e /= scale;
            }
            break;
        }
        out.nullspace.push_back(std::move(basis));
    }
    return out;
}

}  // namespace az
