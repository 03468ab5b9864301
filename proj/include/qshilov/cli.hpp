#pragma once

// Command-line front end: verification suites, expression evaluation,
// classification reports (text/JSON/SVG wall diagrams).
//
// Exit codes: 0 = success / all checks pass, 1 = verification failure or
// mathematical error, 2 = usage or parse error.

#include <ostream>
#include <string>
#include <vector>

#include "qshilov/prinseries.hpp"

namespace qshilov {

// Versioned (schema: 1) JSON form of a classification report; the two
// functions are exact inverses.
std::string case_report_to_json(const CaseReport& r);
CaseReport case_report_from_json(const std::string& text);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Number of worker threads for verification batches: QSHILOV_THREADS when
// set (min 1), hardware concurrency otherwise.
unsigned cli_thread_count();

} // namespace qshilov
