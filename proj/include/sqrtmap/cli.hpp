#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sqrtmap/dynamics.hpp"
#include "sqrtmap/omega.hpp"
#include "sqrtmap/sturmian.hpp"

namespace sqrtmap {

enum class OutputFormat { text, json, csv };

// Everything a subcommand's output depends on.
struct RunConfig {
  OmegaParams params;
  SearchBudget budget;
  std::size_t corpus_len = 0;
  OutputFormat format = OutputFormat::text;
  Convention convention = Convention::left_closed;
  std::string out_file;
  std::string json_file;
};

// Exit status: 0 success, 1 violation found, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sqrtmap
