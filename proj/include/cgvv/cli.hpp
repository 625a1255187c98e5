#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cgvv::cli {

enum class Format { Human, Report };

struct RunConfig {
  std::string command;  // check, prove, saturate, export-fol, translate, matrix-list, matrix-instantiate
  std::vector<std::string> inputs;
  std::size_t bound = 100;
  std::optional<std::size_t> limit;  // witnesses shown per verdict
  Format format = Format::Human;
  std::optional<std::string> graph;  // subject graph by name

  // matrix
  std::optional<std::string> perspective;
  std::optional<std::string> typology;
  std::string template_name;
  std::vector<std::string> bindings;  // placeholder=value[:Type]
  std::optional<std::string> output;
};

// Exit codes. `prove` reports its outcome with 0/1/3.
inline constexpr int kOk = 0;
inline constexpr int kViolated = 1;
inline constexpr int kInputError = 2;
inline constexpr int kBoundReached = 3;

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses the command line and runs it.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cgvv::cli
