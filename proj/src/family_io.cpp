#include "clusterforge/family_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace clusterforge {

namespace {

[[noreturn]] void fail(const std::string& name, int line, const std::string& message) {
    throw family_parse_error(name + ":" + std::to_string(line) + ": " + message);
}

}  // namespace

Family parse_family(std::istream& in, int d, const std::string& name) {
    std::string raw;
    int line_no = 0;
    bool have_header = false;
    int n = 0, k = 0;
    int header_line = 0;
    std::vector<KSet> sets;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream tokens(raw);
        std::vector<long long> values;
        long long v;
        while (tokens >> v) values.push_back(v);
        if (!tokens.eof()) fail(name, line_no, "unreadable token");
        if (values.empty()) continue;
        if (!have_header) {
            if (values.size() != 2) fail(name, line_no, "header must be exactly 'n k'");
            if (values[0] < 1 || values[0] > max_ground_size || values[1] < 1 ||
                values[1] > values[0])
                fail(name, line_no, "header needs 1 <= k <= n <= " +
                                        std::to_string(max_ground_size));
            n = static_cast<int>(values[0]);
            k = static_cast<int>(values[1]);
            header_line = line_no;
            have_header = true;
            continue;
        }
        if (static_cast<int>(values.size()) != k)
            fail(name, line_no, "expected " + std::to_string(k) + " elements, got " +
                                    std::to_string(values.size()));
        KSet s{0};
        for (long long e : values) {
            if (e < 1 || e > n)
                fail(name, line_no, "element " + std::to_string(e) + " outside [1," +
                                        std::to_string(n) + "]");
            if (s.contains(static_cast<int>(e)))
                fail(name, line_no, "repeated element " + std::to_string(e));
            s = s.with(static_cast<int>(e));
        }
        sets.push_back(s);
    }
    if (!have_header) fail(name, line_no, "missing 'n k' header");
    try {
        return family_from_ksets(Params{n, k, d}, std::move(sets));
    } catch (const std::invalid_argument& e) {
        fail(name, header_line, e.what());
    }
}

Family read_family_file(const std::string& path, int d) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open family file: " + path);
    return parse_family(in, d, path);
}

void write_family(std::ostream& out, const Family& f) {
    out << f.params.n << ' ' << f.params.k << '\n';
    for (KSet s : f.members) {
        bool first = true;
        for (int e : s.elements()) {
            if (!first) out << ' ';
            out << e;
            first = false;
        }
        out << '\n';
    }
}

}  // namespace clusterforge
