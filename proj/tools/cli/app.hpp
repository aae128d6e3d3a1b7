#pragma once

#include <iosfwd>

namespace hosc::cli {

/// Parses argv, runs the command and writes the report to stdout or --out.
/// Returns 0 on success, 2 on usage or parse errors, 3 on numeric failure
/// (including failed verify invariants).
int main(int argc, char** argv, std::ostream& out, std::ostream& err);
int main(int argc, char** argv);

} // namespace hosc::cli
