#pragma once

#include <string>

#include "qdecomp/maxcut.hpp"
#include "qdecomp/qaoa.hpp"
#include "qdecomp/shrink.hpp"
#include "qdecomp/tsp.hpp"

namespace qdecomp {

// JSON round-trips for the persisted artifact types. Real numbers use
// shortest-round-trip formatting, so reloading reproduces values exactly.

std::string to_json(const TspInstance& tsp);
TspInstance tsp_from_json(const std::string& text);

std::string to_json(const QuboProblem& q);
QuboProblem qubo_from_json(const std::string& text);

std::string to_json(const MaxCutInstance& g);
MaxCutInstance maxcut_from_json(const std::string& text);

std::string to_json(const CutSolution& cut);
CutSolution cut_from_json(const std::string& text);

std::string to_json(const ShrinkStack& stack);
ShrinkStack shrink_stack_from_json(const std::string& text);

std::string to_json(const QaoaParams& params);
QaoaParams qaoa_params_from_json(const std::string& text);

/// Atomic write (temp file + rename) so partial artifacts never appear.
void save_text(const std::string& path, const std::string& content);
std::string load_text(const std::string& path);

}  // namespace qdecomp
