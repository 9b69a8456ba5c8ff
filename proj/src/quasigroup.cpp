#include "muq/quasigroup.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

namespace muq {

Sym MultaryQuasigroup::solve_last(std::span<const Sym> prefix, Sym target) const {
    require(static_cast<int>(prefix.size()) == arity - 1, Err::ArityMismatch,
            "solve_last expects arity-1 prefix arguments");
    std::size_t base = 0;
    for (Sym a : prefix) base = base * order + a;
    base *= order;
    for (int y = 0; y < order; ++y)
        if (table[base + y] == target) return static_cast<Sym>(y);
    fail(Err::BadShape, "no solution on quasigroup line (table is not a quasigroup)");
}

QgCheck qg_check(std::span<const Sym> table, int m, int order) {
    QgCheck res;
    require(m >= 1 && order >= 1, Err::BadShape, "arity and order must be positive");
    const std::uint64_t want = ipow(order, m);
    require(table.size() == want, Err::BadShape,
            "table length " + std::to_string(table.size()) + " != order^m = " + std::to_string(want));
    for (Sym v : table)
        require(v < order, Err::BadShape, "table value out of range");

    std::vector<std::uint64_t> stride(m);
    {
        std::uint64_t s = 1;
        for (int j = m - 1; j >= 0; --j) {
            stride[j] = s;
            s *= order;
        }
    }
    // Every line in every direction must be a permutation of the alphabet.
    const std::uint64_t lines = want / order;
    std::vector<Sym> others(m > 1 ? m - 1 : 0);
    for (int j = 0; j < m; ++j) {
        for (std::uint64_t line = 0; line < lines; ++line) {
            // decode the m-1 fixed arguments in row-major order
            std::uint64_t rest = line, base = 0;
            for (int i = m - 1, k = m - 2; i >= 0; --i) {
                if (i == j) continue;
                const Sym a = static_cast<Sym>(rest % order);
                rest /= order;
                if (!others.empty()) others[k--] = a;
                base += a * stride[i];
            }
            unsigned seen = 0;
            for (int x = 0; x < order; ++x) {
                const Sym out = table[base + x * stride[j]];
                if (seen & (1u << out)) {
                    res.ok = false;
                    res.position = j + 1;
                    res.fixed = Word(others.begin(), others.end());
                    res.value = out;
                    res.detail = "argument position " + std::to_string(j + 1) + ", fixed args (" +
                                 format_word(res.fixed) + "): value " + std::to_string(int(out)) +
                                 " repeats";
                    return res;
                }
                seen |= 1u << out;
            }
        }
    }
    res.ok = true;
    return res;
}

MultaryQuasigroup qg_linear(const FieldTable& F, int m, std::span<const Sym> coeffs, Sym c) {
    require(static_cast<int>(coeffs.size()) == m, Err::ArityMismatch,
            "qg_linear needs m coefficients");
    for (Sym a : coeffs)
        require(a != 0, Err::ZeroCoefficient, "qg_linear coefficients must be nonzero");
    MultaryQuasigroup f;
    f.arity = m;
    f.order = F.q;
    f.table.assign(ipow(F.q, m), 0);
    Word args(m, 0);
    for (std::size_t idx = 0;; ++idx) {
        Sym acc = c;
        for (int i = 0; i < m; ++i) acc = F.add(acc, F.mul(coeffs[i], args[i]));
        f.table[idx] = acc;
        int i = m - 1;
        while (i >= 0 && ++args[i] == F.q) args[i--] = 0;
        if (i < 0) break;
    }
    return f;
}

MultaryQuasigroup qg_sum(const FieldTable& F, int m) {
    Word ones(m, 1);
    return qg_linear(F, m, ones, 0);
}

std::optional<std::pair<Word, Sym>> linear_form(const FieldTable& F, const MultaryQuasigroup& f) {
    if (f.order != F.q) return std::nullopt;
    Word zero(f.arity, 0);
    const Sym c = f.eval(zero);
    Word coeffs(f.arity, 0);
    for (int i = 0; i < f.arity; ++i) {
        Word e(f.arity, 0);
        e[i] = 1;
        coeffs[i] = F.sub(f.eval(e), c);
        if (coeffs[i] == 0) return std::nullopt;
    }
    const MultaryQuasigroup rebuilt = qg_linear(F, f.arity, coeffs, c);
    if (rebuilt.table != f.table) return std::nullopt;
    return std::make_pair(coeffs, c);
}

namespace {

bool qg_count_feasible(int m, int order) {
    switch (order) {
        case 1: return true;
        case 2: return m <= 6;
        case 3: return m <= 3;
        case 4: return m <= 2;
        case 5:
        case 6: return m == 1;
        default: return false;
    }
}

// Backtracking enumerator. Cells are filled in row-major order, candidate
// values ascending; per direction, each line keeps a bitmask of used
// values. The visitor gets the finished table and returns false to stop.
struct QgSearch {
    int m, order;
    std::uint64_t cells;
    std::vector<std::uint64_t> stride;
    // line_id[cell*m + j]: index of the direction-j line through the cell
    std::vector<std::uint32_t> line_id;
    std::vector<std::uint32_t> used; // m * (cells/order) masks
    std::vector<Sym> table;
    std::uint64_t lines_per_dir;

    QgSearch(int m_, int order_) : m(m_), order(order_) {
        cells = ipow(order, m);
        lines_per_dir = cells / order;
        stride.resize(m);
        std::uint64_t s = 1;
        for (int j = m - 1; j >= 0; --j) {
            stride[j] = s;
            s *= order;
        }
        line_id.resize(cells * m);
        for (std::uint64_t cell = 0; cell < cells; ++cell) {
            std::uint64_t rest = cell;
            std::vector<int> digits(m);
            for (int i = m - 1; i >= 0; --i) {
                digits[i] = static_cast<int>(rest % order);
                rest /= order;
            }
            for (int j = 0; j < m; ++j) {
                std::uint64_t id = 0;
                for (int i = 0; i < m; ++i)
                    if (i != j) id = id * order + digits[i];
                line_id[cell * m + j] = static_cast<std::uint32_t>(id);
            }
        }
        used.assign(m * lines_per_dir, 0);
        table.assign(cells, 0);
    }

    // first_cell_value >= 0 pins table[0] (used to split work across threads)
    bool run(const std::function<bool(const std::vector<Sym>&)>& visit, int first_cell_value) {
        return dfs(0, visit, first_cell_value);
    }

  private:
    bool dfs(std::uint64_t cell, const std::function<bool(const std::vector<Sym>&)>& visit,
             int pin) {
        if (cell == cells) return visit(table);
        const std::uint32_t* lid = &line_id[cell * m];
        const int lo = (cell == 0 && pin >= 0) ? pin : 0;
        const int hi = (cell == 0 && pin >= 0) ? pin + 1 : order;
        for (int v = lo; v < hi; ++v) {
            bool free = true;
            for (int j = 0; j < m; ++j) {
                if (used[j * lines_per_dir + lid[j]] & (1u << v)) {
                    free = false;
                    break;
                }
            }
            if (!free) continue;
            for (int j = 0; j < m; ++j) used[j * lines_per_dir + lid[j]] |= 1u << v;
            table[cell] = static_cast<Sym>(v);
            const bool keep_going = dfs(cell + 1, visit, pin);
            for (int j = 0; j < m; ++j) used[j * lines_per_dir + lid[j]] &= ~(1u << v);
            if (!keep_going) return false;
        }
        return true;
    }
};

} // namespace

std::uint64_t qg_count(int m, int order, int threads) {
    require(m >= 1 && order >= 1 && order <= 16, Err::BadShape, "bad arity or order");
    require(qg_count_feasible(m, order), Err::TooLarge,
            "qg_count infeasible for m=" + std::to_string(m) + ", order=" + std::to_string(order));
    threads = std::max(1, std::min(threads, order));
    if (threads == 1) {
        std::uint64_t count = 0;
        QgSearch s(m, order);
        s.run(
            [&count](const std::vector<Sym>&) {
                ++count;
                return true;
            },
            -1);
        return count;
    }
    // Partition the search tree by the value of the first cell; the total
    // is independent of the schedule.
    std::vector<std::uint64_t> part(order, 0);
    std::vector<std::thread> pool;
    std::size_t next = 0;
    std::mutex mtx;
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w]() {
            (void)w;
            while (true) {
                std::size_t v;
                {
                    std::lock_guard<std::mutex> lk(mtx);
                    if (next >= static_cast<std::size_t>(order)) return;
                    v = next++;
                }
                QgSearch s(m, order);
                s.run(
                    [&part, v](const std::vector<Sym>&) {
                        ++part[v];
                        return true;
                    },
                    static_cast<int>(v));
            }
        });
    }
    for (auto& th : pool) th.join();
    std::uint64_t count = 0;
    for (auto c : part) count += c;
    return count;
}

std::vector<MultaryQuasigroup> qg_first(int m, int order, std::size_t k) {
    require(m >= 1 && order >= 1 && order <= 16, Err::BadShape, "bad arity or order");
    require(ipow(order, m) <= (1u << 24), Err::TooLarge, "table too large to enumerate");
    std::vector<MultaryQuasigroup> out;
    if (k == 0) return out;
    QgSearch s(m, order);
    s.run(
        [&](const std::vector<Sym>& table) {
            MultaryQuasigroup f;
            f.arity = m;
            f.order = order;
            f.table = table;
            out.push_back(std::move(f));
            return out.size() < k;
        },
        -1);
    return out;
}

bool vh_pair_check(const MultaryQuasigroup& v, const MultaryQuasigroup& h, const FieldTable& F) {
    const int q = F.q;
    require(v.order == q && h.order == q, Err::ArityMismatch, "v, h must have order q");
    require(v.arity == q - 1 && h.arity == q - 1, Err::ArityMismatch, "v, h must be (q-1)-ary");
    const std::uint64_t count = ipow(q, q - 1);
    std::vector<Sym> rows;
    rows.reserve(count * (q + 1));
    Word y(q - 1, 0);
    for (std::uint64_t it = 0;; ++it) {
        rows.insert(rows.end(), y.begin(), y.end());
        rows.push_back(v.eval(y));
        rows.push_back(h.eval(y));
        int i = q - 2;
        while (i >= 0 && ++y[i] == q) y[i--] = 0;
        if (i < 0) break;
    }
    const Code c = Code::from_rows(q, q + 1, std::move(rows));
    return is_perfect(c).ok;
}

MultaryQuasigroup sigma_from_component_law(const MultaryQuasigroup& V, const MultaryQuasigroup& v,
                                           int k) {
    const int q = v.order;
    require(V.order == q, Err::ArityMismatch, "V and v must share the order");
    require(v.arity == q - 1, Err::ArityMismatch, "v must be (q-1)-ary");
    require(V.arity == k + 1, Err::ArityMismatch, "V must be (k+1)-ary");
    MultaryQuasigroup f;
    f.arity = (q - 1) * k + 1;
    f.order = q;
    f.table.assign(ipow(q, f.arity), 0);
    Word args(f.arity, 0);
    Word folded(k + 1, 0);
    for (std::size_t idx = 0;; ++idx) {
        for (int j = 0; j < k; ++j)
            folded[j] = v.eval(std::span<const Sym>(args).subspan(j * (q - 1), q - 1));
        folded[k] = args[f.arity - 1];
        f.table[idx] = V.eval(folded);
        int i = f.arity - 1;
        while (i >= 0 && ++args[i] == q) args[i--] = 0;
        if (i < 0) break;
    }
    return f;
}

SigmaFamily SigmaFamily::uniform(int t, MultaryQuasigroup sigma) {
    SigmaFamily fam;
    fam.t = t;
    fam.l = sigma.arity;
    fam.order = sigma.order;
    fam.sigmas.assign(t, std::move(sigma));
    return fam;
}

SigmaFamily SigmaFamily::linear_sums(const FieldTable& F, int t, int l) {
    return uniform(t, qg_sum(F, l));
}

Word sigma_profile(std::span<const Sym> x, const CodeParameters& layout, const SigmaFamily& sigma) {
    require(static_cast<int>(x.size()) == layout.n, Err::LengthMismatch,
            "word length does not match layout");
    require(sigma.t == layout.t && sigma.l == layout.l, Err::ArityMismatch,
            "sigma family does not match layout");
    require(static_cast<int>(sigma.sigmas.size()) == layout.t, Err::ArityMismatch,
            "sigma family is missing maps");
    Word mu(layout.t, 0);
    for (int i = 0; i < layout.t; ++i)
        mu[i] = sigma.sigmas[i].eval(x.subspan(static_cast<std::size_t>(i) * layout.l, layout.l));
    return mu;
}

} // namespace muq
