#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "fdslib/constructions.hpp"
#include "fdslib/digraph.hpp"
#include "fdslib/extremal.hpp"
#include "fdslib/fds.hpp"
#include "fdslib/sampling.hpp"

namespace fdslib {

using json = nlohmann::json;

// Graph text format: first non-comment line "n <count>", then one arc "u v"
// per line (1-based, single spaces); '#' starts a comment; duplicates are
// rejected. Writing is bit-exact: arcs sorted, LF line endings.
Digraph read_digraph_text(std::istream& in);
Digraph parse_digraph_text(const std::string& text);
std::string write_digraph_text(const Digraph& d);
Digraph load_digraph_file(const std::string& path);

// FDS JSON: {n, q, locals: [{support, table}, ..]} with tables in rank order;
// round-trips exactly.
json fds_to_json(const Fds& f);
Fds fds_from_json(const json& j);

json state_to_json(const StateVector& x);

json extremal_report_to_json(const ExtremalReport& report, const Digraph& d,
                             int q);
json certificate_to_json(const ConstructionCertificate& cert,
                         const std::string& construction, const json& params);
json fix_counts_to_json(const FixCounts& counts, const Digraph& d, int q,
                        bool strict);
json monte_carlo_to_json(const MonteCarloStats& stats);

// RFC-style CSV quoting.
std::string csv_escape(const std::string& field);

}  // namespace fdslib
