#pragma once

#include <string>
#include <string_view>

#include "monoinfer/network.hpp"

namespace monoinfer {

/// Parse the textual problem format (see docs/problem-format.md). Throws
/// ParseError with the 1-based line and column of the offending token.
InferenceProblem parseProblem(std::string_view text);

/// Read and parse a file; I/O failures raise UsageError.
InferenceProblem readProblemFile(const std::string& path);

/// Canonical text of a problem; parseProblem(writeProblem(p)) reproduces p.
std::string writeProblem(const InferenceProblem& problem);

}  // namespace monoinfer
