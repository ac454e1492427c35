#include "fdslib/io.hpp"

#include <fstream>
#include <sstream>

namespace fdslib {

Digraph read_digraph_text(std::istream& in) {
  std::string line;
  int lineno = 0;
  int n = -1;
  Digraph d(0);
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (auto pos = view.find('#'); pos != std::string_view::npos)
      view = view.substr(0, pos);
    std::string trimmed(view);
    std::istringstream tokens(trimmed);
    std::string first;
    if (!(tokens >> first)) continue;  // blank or comment-only line
    if (n < 0) {
      long count;
      if (first != "n" || !(tokens >> count) || count < 0)
        throw ParseError("graph line " + std::to_string(lineno) +
                         ": expected 'n <count>'");
      std::string extra;
      if (tokens >> extra)
        throw ParseError("graph line " + std::to_string(lineno) +
                         ": trailing tokens");
      n = static_cast<int>(count);
      d = Digraph(n);
      continue;
    }
    long u, v;
    std::string extra;
    try {
      u = std::stol(first);
    } catch (...) {
      throw ParseError("graph line " + std::to_string(lineno) + ": bad arc");
    }
    if (!(tokens >> v) || (tokens >> extra))
      throw ParseError("graph line " + std::to_string(lineno) + ": bad arc");
    try {
      d.add_arc(static_cast<int>(u), static_cast<int>(v));
    } catch (const DomainError& e) {
      throw ParseError("graph line " + std::to_string(lineno) + ": " +
                       e.what());
    }
  }
  if (n < 0) throw ParseError("graph: missing 'n <count>' header");
  return d;
}

Digraph parse_digraph_text(const std::string& text) {
  std::istringstream in(text);
  return read_digraph_text(in);
}

std::string write_digraph_text(const Digraph& d) {
  std::string out = "n " + std::to_string(d.vertex_count()) + "\n";
  for (auto [u, v] : d.arcs())
    out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

Digraph load_digraph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file: " + path);
  return read_digraph_text(in);
}

json fds_to_json(const Fds& f) {
  json locals = json::array();
  for (const auto& lf : f.locals) {
    json entry;
    entry["support"] = lf.support;
    entry["table"] = lf.table;
    locals.push_back(entry);
  }
  return json{{"n", f.n}, {"q", f.q}, {"locals", locals}};
}

Fds fds_from_json(const json& j) {
  Fds f;
  try {
    f.n = j.at("n").get<int>();
    f.q = j.at("q").get<int>();
    for (const auto& entry : j.at("locals")) {
      LocalFunction lf;
      lf.support = entry.at("support").get<std::vector<int>>();
      lf.table = entry.at("table").get<std::vector<value_t>>();
      f.locals.push_back(std::move(lf));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("fds json: ") + e.what());
  }
  try {
    f.validate();
  } catch (const DomainError& e) {
    throw ParseError(std::string("fds json: ") + e.what());
  }
  return f;
}

json state_to_json(const StateVector& x) {
  return json{{"q", x.q}, {"coords", x.coords}, {"rank", x.rank()}};
}

json extremal_report_to_json(const ExtremalReport& report, const Digraph& d,
                             int q) {
  return json{{"kind", extremal_kind_name(report.kind)},
              {"D-hash", d.hash()},
              {"q", q},
              {"value", report.value},
              {"witness", fds_to_json(report.witness_fn)},
              {"witness_state", state_to_json(report.witness_state)},
              {"space_size", report.space_size}};
}

json certificate_to_json(const ConstructionCertificate& cert,
                         const std::string& construction, const json& params) {
  return json{{"construction", construction},
              {"params", params},
              {"claim",
               {{"quantity", std::string(1, cert.claim.quantity)},
                {"relation", cert.claim.exact ? "=" : ">="},
                {"value", rational_string(cert.claim.value)}}},
              {"graph", write_digraph_text(cert.claimed_graph)},
              {"fds", fds_to_json(cert.fds)}};
}

json fix_counts_to_json(const FixCounts& counts, const Digraph& d, int q,
                        bool strict) {
  return json{{"D-hash", d.hash()},
              {"q", q},
              {"strict", strict},
              {"space_size", counts.space_size},
              {"f0", counts.f0},
              {"f1", counts.f1},
              {"f2", counts.f2},
              {"p0", rational_string(counts.p0)},
              {"p1", rational_string(counts.p1)},
              {"p2", rational_string(counts.p2)},
              {"fix_total", counts.fix_total},
              {"stability_total", counts.stability_total}};
}

json monte_carlo_to_json(const MonteCarloStats& s) {
  return json{{"samples", s.samples},
              {"p0", s.p0},
              {"se_p0", s.se_p0},
              {"p1", s.p1},
              {"se_p1", s.se_p1},
              {"p2", s.p2},
              {"se_p2", s.se_p2},
              {"mean_instability", s.mean_instability},
              {"se_mean_instability", s.se_mean_instability},
              {"mean_stability", s.mean_stability},
              {"se_mean_stability", s.se_mean_stability}};
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace fdslib
