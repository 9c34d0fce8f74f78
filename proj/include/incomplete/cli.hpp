#ifndef INCOMPLETE_CLI_HPP
#define INCOMPLETE_CLI_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace incomplete {

/// Bad flags, bad parameters, missing files: exit status 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or inadmissible data content: exit status 3.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One observation per CSV row, single numeric column. Returns the sorted
/// sample. Throws DataError naming the offending row on parse failure and
/// on empty input.
std::vector<double> ingest_sample(const std::string& path);

/// Entry point behind main(): parses arguments (without the program name),
/// dispatches, writes the JSON report to --output or stdout. Returns the
/// process exit status: 0 completed, 2 config error, 3 data error.
int run_cli(const std::vector<std::string>& args);

} // namespace incomplete

#endif
