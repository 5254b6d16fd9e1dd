#include "clusterforge/report.hpp"

#include <sstream>

namespace clusterforge {

ordered_json kset_to_json(KSet s) {
    ordered_json arr = ordered_json::array();
    for (int e : s.elements()) arr.push_back(e);
    return arr;
}

ordered_json family_to_json(const Family& f) {
    ordered_json arr = ordered_json::array();
    for (KSet s : f.members) arr.push_back(kset_to_json(s));
    return arr;
}

std::string Report::to_json() const {
    ordered_json root = ordered_json::object();
    root["command"] = command;
    root["params"] = {{"n", params.n}, {"k", params.k}, {"d", params.d}};
    root["outcome"] = outcome;
    root["details"] = details;
    root["exit_code"] = exit_code;
    return root.dump();
}

std::string Report::to_text() const {
    std::ostringstream out;
    out << "command: " << command << '\n';
    out << "params: n=" << params.n << " k=" << params.k << " d=" << params.d << '\n';
    out << "outcome: " << outcome << '\n';
    if (!details.empty()) out << "details: " << details.dump(2) << '\n';
    return out.str();
}

}  // namespace clusterforge
