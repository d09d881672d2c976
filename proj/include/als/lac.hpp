#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "als/aig.hpp"
#include "als/cpm.hpp"
#include "als/metrics.hpp"
#include "als/simulator.hpp"

namespace als {

enum class CandidateStage : uint8_t { Generated, Pruned, Sorted };

enum class ConstScope : uint8_t { PoDrivers, Internal, All };

struct CandidateSet {
    std::vector<Lac> lacs;
    CandidateStage stage = CandidateStage::Generated;

    size_t size() const { return lacs.size(); }
};

// Two constant candidates (0 then 1) per in-scope live signal. PO drivers are
// the variables referenced by PO literals; internal is every other live
// signal (AND nodes and PIs that still feed a PO cone). Gains are filled from
// the network's MFFC sizes.
CandidateSet gen_constant_lacs(const AigNetwork& net, ConstScope scope);

// Substitution candidates (target <- source) over live signal pairs with
// source outside TFO(target) + {target}. With allow_complement both source
// polarities are produced. similarity_cap keeps only pairs whose simulated
// signatures differ in at most that many patterns (after polarity choice).
CandidateSet gen_substitution_lacs(const AigNetwork& net, const SimState& state,
                                   bool allow_complement,
                                   std::optional<uint64_t> similarity_cap);

// Sets every candidate's lb to the maximum deviation between the golden PO
// values and the Eq-style updated PO values over the evaluated columns
// (all columns, or the first `prefix` of them).
void estimate_lbs(CandidateSet& cands, const SimState& golden_sim, const SimState& approx_sim,
                  const Cpm& cpm, const ErrorSpec& spec,
                  std::optional<size_t> prefix = std::nullopt, unsigned threads = 1);

// Keeps candidates with lb <= bound (discard rule is strictly greater).
CandidateSet prune(CandidateSet cands, const ErrorSpec& spec);

// Stable order: lb ascending, gain descending, then (target, replacement
// code) ascending for determinism; first k retained.
CandidateSet sort_and_truncate(CandidateSet cands, size_t k);

// TSV debug dump: target, kind, source, lb, gain.
void dump_candidates_tsv(const CandidateSet& cands, std::ostream& out,
                         std::optional<uint32_t> iteration = std::nullopt);

}  // namespace als
