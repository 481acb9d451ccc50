#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tubal/tube_ring.hpp"

namespace tubal::cli {

enum ExitCode : int {
  kOk = 0,
  kBadArguments = 2,
  kIoError = 3,
  kNumericFailure = 4,
  kNotTubal = 5,
};

/// Exit status for a library error.
int exit_code_for(ErrorCode code);

struct CompressOptions {
  std::string input;
  std::string transform = "dft";
  std::optional<Index> rank;
  std::optional<std::vector<Index>> multirank;
  std::string output;
  /// Empty: print the report on `out`.
  std::string report;
};

struct DiscoverOptions {
  /// tprod | negacyclic | xor:k | splitc | dual | table:PATH
  std::string op;
  std::optional<Index> n;
  std::uint64_t seed = 0;
  /// Empty: print the report on `out`.
  std::string out;
};

struct InfoOptions {
  std::string input;
  std::string transform = "dft";
};

struct OpTableOptions {
  std::string op;
  std::optional<Index> n;
  int probes = 32;
  std::uint64_t seed = 0;
  std::string out;
};

int run_compress(const CompressOptions& opts, std::ostream& out, std::ostream& err);
int run_discover(const DiscoverOptions& opts, std::ostream& out, std::ostream& err);
int run_info(const InfoOptions& opts, std::ostream& out, std::ostream& err);
int run_optable(const OpTableOptions& opts, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace tubal::cli
