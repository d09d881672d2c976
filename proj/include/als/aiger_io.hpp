#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "als/aig.hpp"

namespace als {

struct AigerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ASCII AIGER ("aag") reader. Strict canonical form: L = 0, PIs are literals
// 2..2I in order, AND definitions appear in ascending variable order with
// both fanins already defined. Binary "aig" documents are accepted read-only.
AigNetwork parse_aiger(const std::string& text);
AigNetwork read_aiger_file(const std::string& path);

// ASCII AIGER writer; comment section is regenerated with tool provenance.
std::string write_aiger(const AigNetwork& net);
void write_aiger_file(const AigNetwork& net, const std::string& path);

}  // namespace als
