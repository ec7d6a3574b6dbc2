#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace kleincl {

/// Incremental row-space basis over the rationals (exact). Rows are kept in
/// echelon form with recorded pivot columns; insertion is Gaussian
/// elimination against the current basis.
class RationalRowBasis {
public:
    explicit RationalRowBasis(std::size_t cols) : cols_(cols) {}

    std::size_t rank() const { return rows_.size(); }

    /// Reduce a row against the basis; returns true if it was dependent,
    /// otherwise inserts the reduced row and returns false.
    bool add_row(std::vector<mpq_class> row) {
        reduce(row);
        int p = pivot(row);
        if (p < 0) return true;
        normalize(row, p);
        rows_.push_back(std::move(row));
        pivots_.push_back(p);
        return false;
    }

    bool contains(std::vector<mpq_class> row) const {
        reduce(row);
        return pivot(row) < 0;
    }

private:
    void reduce(std::vector<mpq_class>& row) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const mpq_class& f = row[pivots_[i]];
            if (f == 0) continue;
            mpq_class c = f;  // basis rows have pivot entry 1
            for (std::size_t j = pivots_[i]; j < cols_; ++j)
                if (rows_[i][j] != 0) row[j] -= c * rows_[i][j];
        }
    }
    static int pivot(const std::vector<mpq_class>& row) {
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0) return static_cast<int>(j);
        return -1;
    }
    static void normalize(std::vector<mpq_class>& row, int p) {
        mpq_class inv = 1 / row[p];
        for (auto& x : row) x *= inv;
    }

    std::size_t cols_;
    std::vector<std::vector<mpq_class>> rows_;
    std::vector<int> pivots_;
};

/// Same structure over Z/p for a word-size prime p.
class ModularRowBasis {
public:
    ModularRowBasis(std::size_t cols, std::uint64_t p) : cols_(cols), p_(p) {}

    std::size_t rank() const { return rows_.size(); }

    bool add_row(std::vector<std::uint64_t> row) {
        reduce(row);
        int p = pivot(row);
        if (p < 0) return true;
        normalize(row, p);
        rows_.push_back(std::move(row));
        pivots_.push_back(p);
        return false;
    }

    bool contains(std::vector<std::uint64_t> row) const {
        reduce(row);
        return pivot(row) < 0;
    }

private:
    std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p_);
    }
    std::uint64_t invmod(std::uint64_t a) const {
        // Fermat; p_ is prime.
        std::uint64_t r = 1, e = p_ - 2;
        while (e) {
            if (e & 1) r = mulmod(r, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return r;
    }
    void reduce(std::vector<std::uint64_t>& row) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            std::uint64_t f = row[pivots_[i]];
            if (f == 0) continue;
            std::uint64_t c = p_ - f;  // add c * basis row
            const auto& b = rows_[i];
            for (std::size_t j = pivots_[i]; j < cols_; ++j)
                if (b[j]) row[j] = (row[j] + mulmod(c, b[j])) % p_;
        }
    }
    static int pivot(const std::vector<std::uint64_t>& row) {
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0) return static_cast<int>(j);
        return -1;
    }
    void normalize(std::vector<std::uint64_t>& row, int p) const {
        std::uint64_t inv = invmod(row[p]);
        for (auto& x : row) x = mulmod(x, inv);
    }

    std::size_t cols_;
    std::uint64_t p_;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::vector<int> pivots_;
};

}  // namespace kleincl
