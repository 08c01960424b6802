#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kdekit/sample.hpp"

namespace kdekit::cli {

//! Where and how to read observations. The path "-" means standard input;
//! column is a 1-based index or a header name; a space or tab delimiter
//! splits on any whitespace run.
struct DataSource {
  std::string path = "-";
  std::string column = "1";
  char delimiter = ',';
  bool skip_header = false;
  std::size_t exclude_top = 0;
};

//! Parse one column out of delimited text. Rows whose selected field is
//! missing or unparseable are skipped and reported through `warnings`
//! ("line N: ..."); a value that parses but is not finite is an error, as is
//! an input that yields no values at all.
Sample ingest(const DataSource& source, std::istream& in,
              std::vector<std::string>* warnings = nullptr);

//! Same, reading from source.path (or standard input for "-").
Sample ingest(const DataSource& source, std::vector<std::string>* warnings = nullptr);

//! Dispatch a full command line (without the program name). Returns the
//! process exit status: 0 on success, 1 on a computation failure, 2 on a
//! usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

//! argv adapter for main().
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace kdekit::cli
