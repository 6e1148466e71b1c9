#pragma once

#include <string>

#include "torfit/solver.hpp"

namespace torfit {

// Versioned plain-text model format.  Floats are written with 17 significant
// digits, so save -> load -> evaluate reproduces results bit for bit.  Files
// are written atomically (temp file, then rename).
void save_model(const FittedModel& model, const std::string& path);
FittedModel load_model(const std::string& path);

// Scattered sites from a text file: one site per line, m coordinates then the
// value, whitespace separated; '#' starts a comment.
ScatteredData load_sites(const std::string& path, int m);

}  // namespace torfit
