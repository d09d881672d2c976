#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "als/aig.hpp"
#include "als/simulator.hpp"

namespace als {

// Change propagation matrix: for node n and PO k, bit i of row(n, k) tells
// whether flipping n's value under pattern i flips PO k. Rows exist for every
// signal that can carry a LAC (live PIs and AND nodes); other variables read
// as all-zero rows, matching resimulate_flip on a dead node.
class Cpm {
public:
    Cpm(size_t columns, size_t words, uint32_t num_pos, uint32_t num_vars,
        std::vector<Var> row_vars)
        : columns_(columns), words_(words), num_pos_(num_pos),
          row_vars_(std::move(row_vars)), row_of_(num_vars, kNoRow),
          bits_(row_vars_.size() * num_pos * words, 0), zero_row_(words, 0) {
        for (uint32_t r = 0; r < row_vars_.size(); ++r) row_of_[row_vars_[r]] = r;
    }

    size_t columns() const { return columns_; }
    size_t words() const { return words_; }
    uint32_t num_pos() const { return num_pos_; }
    size_t row_count() const { return row_vars_.size(); }
    std::span<const Var> row_vars() const { return row_vars_; }
    bool has_row(Var v) const { return row_of_[v] != kNoRow; }
    size_t bit_bytes() const { return bits_.size() * sizeof(uint64_t); }

    std::span<const uint64_t> row(Var v, uint32_t po) const {
        uint32_t r = row_of_[v];
        if (r == kNoRow) return zero_row_;
        return {bits_.data() + (size_t{r} * num_pos_ + po) * words_, words_};
    }

    void fill_row(Var v, const std::vector<std::vector<uint64_t>>& indicators) {
        uint32_t r = row_of_[v];
        uint64_t* dst = bits_.data() + size_t{r} * num_pos_ * words_;
        for (uint32_t k = 0; k < num_pos_; ++k, dst += words_)
            std::copy(indicators[k].begin(), indicators[k].end(), dst);
    }

    // One cone resimulation per stored row (cost accounting for tests).
    uint64_t cone_resims = 0;

private:
    static constexpr uint32_t kNoRow = ~uint32_t{0};

    size_t columns_;
    size_t words_;
    uint32_t num_pos_;
    std::vector<Var> row_vars_;
    std::vector<uint32_t> row_of_;
    std::vector<uint64_t> bits_;
    std::vector<uint64_t> zero_row_;
};

// CPM rows for all live signals of the network (one resimulation each).
Cpm build_cpm(const AigNetwork& net, const SimState& state, unsigned threads = 1);

// CPM rows for a chosen subset of variables; lets callers batch node ranges
// when the full matrix would blow a memory cap.
Cpm build_cpm_for(const AigNetwork& net, const SimState& state, std::span<const Var> vars,
                  unsigned threads = 1);

// New PO value vectors after applying the lac, via the impact factors:
// y'_k = yhat_k xor ((n xor n') and P[n, k]). Pure word arithmetic; no
// circuit is rebuilt.
std::vector<std::vector<uint64_t>> po_values_under_lac(const SimState& state, const Cpm& cpm,
                                                       const Lac& lac);

}  // namespace als
