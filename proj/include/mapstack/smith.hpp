#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mapstack {

using Integer = boost::multiprecision::cpp_int;

// Sparse integer matrix stored by rows, each row sorted by column.
class IntMatrix {
public:
    using Entry = std::pair<std::uint32_t, Integer>;
    using Row = std::vector<Entry>;

private:
    template <class R>
    static auto lower(R& row, std::size_t c) {
        return std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t k) { return e.first < k; });
    }

public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace_back(static_cast<std::uint32_t>(i), 1);
        return m;
    }

    std::size_t rows() const { return data_.size(); }
    std::size_t cols() const { return cols_; }

    const Row& row(std::size_t r) const { return data_[r]; }
    // first entry of row r at column ≥ c
    Row::const_iterator from(std::size_t r, std::size_t c) const { return lower(data_[r], c); }

    Integer get(std::size_t r, std::size_t c) const {
        auto it = lower(data_[r], c);
        return it != data_[r].end() && it->first == c ? it->second : Integer(0);
    }
    void set(std::size_t r, std::size_t c, const Integer& v) {
        auto& row = data_[r];
        auto it = lower(row, c);
        bool present = it != row.end() && it->first == c;
        if (v == 0) {
            if (present) row.erase(it);
        } else if (present) {
            it->second = v;
        } else {
            row.emplace(it, static_cast<std::uint32_t>(c), v);
        }
    }
    void add(std::size_t r, std::size_t c, const Integer& v) {
        if (v == 0) return;
        auto& row = data_[r];
        auto it = lower(row, c);
        if (it != row.end() && it->first == c) {
            it->second += v;
            if (it->second == 0) row.erase(it);
        } else {
            row.emplace(it, static_cast<std::uint32_t>(c), v);
        }
    }

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (const auto& r : data_) n += r.size();
        return n;
    }

    // row_i += q · row_j, by merging
    void add_row(std::size_t i, std::size_t j, const Integer& q) {
        if (q == 0 || i == j) return;
        const Row& b = data_[j];
        Row merged;
        merged.reserve(data_[i].size() + b.size());
        auto x = data_[i].begin(), xe = data_[i].end();
        auto y = b.begin(), ye = b.end();
        while (x != xe || y != ye) {
            if (y == ye || (x != xe && x->first < y->first)) {
                merged.push_back(std::move(*x++));
            } else if (x == xe || y->first < x->first) {
                merged.emplace_back(y->first, q * y->second);
                ++y;
            } else {
                Integer v = x->second + q * y->second;
                if (v != 0) merged.emplace_back(x->first, std::move(v));
                ++x, ++y;
            }
        }
        data_[i] = std::move(merged);
    }
    void swap_rows(std::size_t i, std::size_t j) { std::swap(data_[i], data_[j]); }
    void negate_row(std::size_t i) {
        for (auto& e : data_[i]) e.second = -e.second;
    }
    // col_i += q · col_j
    void add_col(std::size_t i, std::size_t j, const Integer& q) {
        if (q == 0 || i == j) return;
        for (std::size_t r = 0; r < data_.size(); ++r) {
            auto it = lower(data_[r], j);
            if (it == data_[r].end() || it->first != j) continue;
            add(r, i, q * it->second);
        }
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (auto& row : data_) {
            auto a = lower(row, i), b = lower(row, j);
            bool ha = a != row.end() && a->first == i, hb = b != row.end() && b->first == j;
            if (!ha && !hb) continue;
            if (ha && hb) {
                std::swap(a->second, b->second);
                continue;
            }
            auto from = ha ? a : b;
            Entry e{static_cast<std::uint32_t>(ha ? j : i), std::move(from->second)};
            row.erase(from);
            row.insert(lower(row, e.first), std::move(e));
        }
    }
    void negate_col(std::size_t i) {
        for (auto& row : data_) {
            auto it = lower(row, i);
            if (it != row.end() && it->first == i) it->second = -it->second;
        }
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        IntMatrix m(a.rows(), b.cols());
        for (std::size_t r = 0; r < a.rows(); ++r) {
            std::map<std::uint32_t, Integer> acc;
            for (const auto& [k, v] : a.data_[r])
                for (const auto& [c, w] : b.data_[k]) acc[c] += v * w;
            for (auto& [c, v] : acc)
                if (v != 0) m.data_[r].emplace_back(c, std::move(v));
        }
        return m;
    }
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) { return a.cols_ == b.cols_ && a.data_ == b.data_; }

private:
    std::size_t cols_ = 0;
    std::vector<Row> data_;
};

// U·A·V = D with D diagonal, d₁ | d₂ | ... and all d > 0.
struct SmithForm {
    std::vector<Integer> factors;  // nonzero diagonal entries
    std::size_t rank() const { return factors.size(); }
    std::optional<IntMatrix> u, u_inv, v, v_inv;
};

namespace detail {

class SmithReducer {
public:
    SmithReducer(IntMatrix a, bool certify) : a_(std::move(a)), certify_(certify) {
        if (certify_) {
            u_ = IntMatrix::identity(a_.rows());
            ui_ = u_;
            v_ = IntMatrix::identity(a_.cols());
            vi_ = v_;
        }
    }

    SmithForm run() {
        const std::size_t limit = std::min(a_.rows(), a_.cols());
        std::size_t t = 0;
        for (; t < limit; ++t) {
            auto pivot = smallest(t, t);
            if (!pivot) break;
            move_to(*pivot, t);
            clear_cross(t);
        }
        // enforce d_i | d_j with 2×2 gcd steps
        for (std::size_t i = 0; i < t; ++i)
            for (std::size_t j = i + 1; j < t; ++j)
                if (a_.get(j, j) % a_.get(i, i) != 0) gcd_step(i, j);
        SmithForm f;
        for (std::size_t i = 0; i < t; ++i) {
            if (a_.get(i, i) < 0) negate_row(i);
            f.factors.push_back(a_.get(i, i));
        }
        if (certify_) {
            f.u = std::move(u_);
            f.u_inv = std::move(ui_);
            f.v = std::move(v_);
            f.v_inv = std::move(vi_);
        }
        return f;
    }

    const IntMatrix& reduced() const { return a_; }

private:
    static Integer magnitude(const Integer& x) { return x < 0 ? Integer(-x) : x; }

    // Smallest magnitude in the remaining block; ties go to the entry whose
    // elimination creates the least fill, (row length - 1)(column length - 1).
    std::optional<std::pair<std::size_t, std::size_t>> smallest(std::size_t r0, std::size_t c0) {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        Integer best_mag;
        col_len_.assign(a_.cols(), 0);
        bool unit = false;
        for (std::size_t r = r0; r < a_.rows(); ++r)
            for (auto it = a_.from(r, c0); it != a_.row(r).end(); ++it) {
                ++col_len_[it->first];
                if (unit) continue;
                if (it->second == 1 || it->second == -1) {
                    unit = true;
                    best_mag = 1;
                    best = {r, it->first};
                    continue;
                }
                Integer m = magnitude(it->second);
                if (!best || m < best_mag) best_mag = m, best = {r, it->first};
            }
        if (!best) return best;
        std::size_t best_cost = SIZE_MAX;
        for (std::size_t r = r0; r < a_.rows() && best_cost > 0; ++r) {
            auto first = a_.from(r, c0);
            std::size_t len = static_cast<std::size_t>(std::distance(first, a_.row(r).end()));
            if (len == 0) continue;
            for (auto it = first; it != a_.row(r).end(); ++it) {
                if (unit ? (it->second != 1 && it->second != -1) : magnitude(it->second) != best_mag) continue;
                std::size_t cost = (len - 1) * (col_len_[it->first] - 1);
                if (cost < best_cost) {
                    best_cost = cost;
                    best = {r, it->first};
                    if (cost == 0) break;
                }
            }
        }
        return best;
    }

    void move_to(std::pair<std::size_t, std::size_t> at, std::size_t t) {
        if (at.first != t) swap_rows(at.first, t);
        if (at.second != t) swap_cols(at.second, t);
    }

    // Clears row t and column t outside the pivot.
    void clear_cross(std::size_t t) {
        for (;;) {
            const Integer p = a_.get(t, t);
            bool dirty = false;
            for (std::size_t r = t + 1; r < a_.rows(); ++r) {
                Integer x = a_.get(r, t);
                if (x == 0) continue;
                add_row(r, t, -(x / p));
                dirty = dirty || a_.get(r, t) != 0;
            }
            std::vector<std::pair<std::uint32_t, Integer>> row_entries;
            for (auto it = a_.from(t, t + 1); it != a_.row(t).end(); ++it)
                row_entries.emplace_back(it->first, it->second);
            const bool column_clean = !dirty;
            for (const auto& [c, x] : row_entries) {
                if (!column_clean)
                    add_col(c, t, -(x / p));
                else
                    add_col_clean(c, t, -(x / p));
                dirty = dirty || a_.get(t, c) != 0;
            }
            if (!dirty) return;
            // a remainder is smaller than the pivot: move it in and repeat
            std::optional<std::pair<std::size_t, std::size_t>> best;
            Integer best_mag;
            for (std::size_t r = t + 1; r < a_.rows(); ++r) {
                Integer x = a_.get(r, t);
                if (x != 0 && (!best || magnitude(x) < best_mag)) {
                    best = {r, t};
                    best_mag = magnitude(x);
                }
            }
            for (auto it = a_.from(t, t + 1); it != a_.row(t).end(); ++it)
                if (!best || magnitude(it->second) < best_mag) {
                    best = {t, it->first};
                    best_mag = magnitude(it->second);
                }
            move_to(*best, t);
        }
    }

    // diag(a, b) at positions i < j becomes diag(gcd, lcm).
    void gcd_step(std::size_t i, std::size_t j) {
        add_row(i, j, 1);  // row i = (a, b)
        // Euclid on row i across columns i, j
        while (a_.get(i, j) != 0) {
            Integer x = a_.get(i, i), y = a_.get(i, j);
            if (magnitude(y) < magnitude(x)) {
                swap_cols(i, j);
                continue;
            }
            add_col(j, i, -(y / x));
        }
        Integer g = a_.get(i, i);
        add_row(j, i, -(a_.get(j, i) / g));
        if (a_.get(j, j) < 0) negate_row(j);
        if (a_.get(i, i) < 0) negate_row(i);
    }

    // Elementary operations, mirrored into the certificates.
    void add_row(std::size_t i, std::size_t j, const Integer& q) {
        if (q == 0) return;
        a_.add_row(i, j, q);
        if (certify_) {
            u_.add_row(i, j, q);
            ui_.add_col(j, i, -q);
        }
    }
    void swap_rows(std::size_t i, std::size_t j) {
        a_.swap_rows(i, j);
        if (certify_) {
            u_.swap_rows(i, j);
            ui_.swap_cols(i, j);
        }
    }
    void negate_row(std::size_t i) {
        a_.negate_row(i);
        if (certify_) {
            u_.negate_row(i);
            ui_.negate_col(i);
        }
    }
    void add_col(std::size_t i, std::size_t j, const Integer& q) {
        if (q == 0) return;
        a_.add_col(i, j, q);
        if (certify_) {
            v_.add_col(i, j, q);
            vi_.add_row(j, i, -q);
        }
    }
    // col_i += q · col_t when the pivot is the only nonzero in column t
    void add_col_clean(std::size_t i, std::size_t t, const Integer& q) {
        if (q == 0) return;
        a_.add(t, i, q * a_.get(t, t));
        if (certify_) {
            v_.add_col(i, t, q);
            vi_.add_row(t, i, -q);
        }
    }
    void swap_cols(std::size_t i, std::size_t j) {
        a_.swap_cols(i, j);
        if (certify_) {
            v_.swap_cols(i, j);
            vi_.swap_rows(i, j);
        }
    }

    IntMatrix a_;
    bool certify_;
    IntMatrix u_, ui_, v_, vi_;
    std::vector<std::size_t> col_len_;
};

} // namespace detail

inline SmithForm smith_normal_form(const IntMatrix& a, bool certify = false) {
    return detail::SmithReducer(a, certify).run();
}

// Re-multiplies the certificates: U·A·V = D, U·U⁻¹ = I, V·V⁻¹ = I.
inline bool verify_smith(const IntMatrix& a, const SmithForm& f) {
    if (!f.u || !f.v || !f.u_inv || !f.v_inv) return false;
    IntMatrix d(a.rows(), a.cols());
    for (std::size_t i = 0; i < f.factors.size(); ++i) d.set(i, i, f.factors[i]);
    for (std::size_t i = 0; i + 1 < f.factors.size(); ++i)
        if (f.factors[i] <= 0 || f.factors[i + 1] % f.factors[i] != 0) return false;
    return (*f.u) * a * (*f.v) == d && (*f.u) * (*f.u_inv) == IntMatrix::identity(a.rows()) &&
           (*f.v) * (*f.v_inv) == IntMatrix::identity(a.cols());
}

} // namespace mapstack
