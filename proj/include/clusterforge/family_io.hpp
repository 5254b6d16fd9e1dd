#pragma once

#include <iosfwd>
#include <string>

#include "clusterforge/ground.hpp"

namespace clusterforge {

/// Parse error carrying "name:line: message" for direct display.
struct family_parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Family file format: '#' starts a comment (anywhere in a line), blank
/// lines are skipped, the first payload line is "n k", and every further
/// payload line lists the k elements of one set. d is not part of the
/// file; the caller supplies it.
Family parse_family(std::istream& in, int d, const std::string& name);

/// Reads the file at path; throws family_parse_error (with the path and
/// line number) or std::runtime_error when the file cannot be opened.
Family read_family_file(const std::string& path, int d);

/// Writes the "n k" header followed by one sorted set per line.
void write_family(std::ostream& out, const Family& f);

}  // namespace clusterforge
