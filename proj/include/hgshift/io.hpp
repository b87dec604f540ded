#pragma once

#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hgshift/hypergraph.hpp"

namespace hgshift {

/// 2-D labeled point cloud. labels is empty when no ground truth is known.
struct PointSet {
    std::vector<std::array<double, 2>> points;
    std::vector<int> labels;

    bool has_labels() const { return !labels.empty(); }
};

/// Candidate correspondences between two point sets. truth is empty when
/// the instance carries no ground-truth pairing.
struct CorrespondenceSet {
    std::vector<std::array<double, 2>> source_points;
    std::vector<std::array<double, 2>> target_points;
    std::vector<std::pair<Index, Index>> candidates;
    std::vector<std::pair<Index, Index>> truth;
};

namespace detail {

inline std::runtime_error io_error(const std::string& where, const std::string& what) {
    return std::runtime_error(where + ": " + what);
}

inline Index line_of_offset(const std::string& text, std::size_t offset) {
    Index line = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

inline std::string read_stream(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Hypergraph JSON format:
// {"vertex_count": N,
//  "hyperedges": [{"weight": w, "members": {"<vertex>": h, ...}}, ...]}
// ---------------------------------------------------------------------------

inline Hypergraph read_hypergraph_json(std::istream& in, const std::string& source = "<input>") {
    const std::string text = detail::read_stream(in);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw detail::io_error(source + ":" + std::to_string(detail::line_of_offset(text, err.byte)),
                               std::string("JSON parse error: ") + err.what());
    }
    try {
        Hypergraph g;
        g.vertex_count = j.at("vertex_count").get<Index>();
        for (const auto& je : j.at("hyperedges")) {
            Hyperedge e;
            e.weight = je.at("weight").get<double>();
            for (const auto& [key, value] : je.at("members").items())
                e.members[static_cast<Index>(std::stoull(key))] = value.get<double>();
            g.hyperedges.push_back(std::move(e));
        }
        if (auto issue = validate(g)) throw detail::io_error(source, *issue);
        return g;
    } catch (const nlohmann::json::exception& err) {
        throw detail::io_error(source, std::string("malformed hypergraph: ") + err.what());
    } catch (const std::invalid_argument&) {
        throw detail::io_error(source, "malformed hypergraph: member keys must be vertex indices");
    }
}

inline void write_hypergraph_json(std::ostream& out, const Hypergraph& g) {
    nlohmann::json j;
    j["vertex_count"] = g.vertex_count;
    j["hyperedges"] = nlohmann::json::array();
    for (const Hyperedge& e : g.hyperedges) {
        nlohmann::json je;
        je["weight"] = e.weight;
        je["members"] = nlohmann::json::object();
        for (const auto& [v, h] : e.members) je["members"][std::to_string(v)] = h;
        j["hyperedges"].push_back(std::move(je));
    }
    out << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Point set format: one "x,y[,label]" per line; '#' starts a comment line.
// ---------------------------------------------------------------------------

inline PointSet read_points_csv(std::istream& in, const std::string& source = "<input>") {
    PointSet ps;
    std::string line;
    Index line_no = 0;
    bool any_label = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 2 && fields.size() != 3)
            throw detail::io_error(source + ":" + std::to_string(line_no),
                                   "expected x,y[,label]");
        try {
            double x = std::stod(fields[0]);
            double y = std::stod(fields[1]);
            ps.points.push_back({x, y});
            if (fields.size() == 3) {
                ps.labels.push_back(std::stoi(fields[2]));
                any_label = true;
            }
        } catch (const std::exception&) {
            throw detail::io_error(source + ":" + std::to_string(line_no),
                                   "could not parse point: " + line);
        }
    }
    if (any_label && ps.labels.size() != ps.points.size())
        throw detail::io_error(source, "labels must cover every point or none");
    return ps;
}

inline void write_points_csv(std::ostream& out, const PointSet& ps) {
    for (Index i = 0; i < ps.points.size(); ++i) {
        out << fmt_double(ps.points[i][0]) << "," << fmt_double(ps.points[i][1]);
        if (ps.has_labels()) out << "," << ps.labels[i];
        out << "\n";
    }
}

// ---------------------------------------------------------------------------
// Matching instance JSON format:
// {"source_points": [[x,y],...], "target_points": [[x,y],...],
//  "candidates": [[p,q],...], "truth": [[p,q],...]}   (truth optional)
// ---------------------------------------------------------------------------

inline CorrespondenceSet read_instance_json(std::istream& in,
                                            const std::string& source = "<input>") {
    const std::string text = detail::read_stream(in);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw detail::io_error(source + ":" + std::to_string(detail::line_of_offset(text, err.byte)),
                               std::string("JSON parse error: ") + err.what());
    }
    try {
        CorrespondenceSet cs;
        for (const auto& p : j.at("source_points"))
            cs.source_points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        for (const auto& p : j.at("target_points"))
            cs.target_points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        for (const auto& c : j.at("candidates"))
            cs.candidates.emplace_back(c.at(0).get<Index>(), c.at(1).get<Index>());
        if (j.contains("truth"))
            for (const auto& c : j.at("truth"))
                cs.truth.emplace_back(c.at(0).get<Index>(), c.at(1).get<Index>());
        for (const auto& [p, q] : cs.candidates)
            if (p >= cs.source_points.size() || q >= cs.target_points.size())
                throw detail::io_error(source, "candidate index out of range");
        return cs;
    } catch (const nlohmann::json::exception& err) {
        throw detail::io_error(source, std::string("malformed instance: ") + err.what());
    }
}

inline void write_instance_json(std::ostream& out, const CorrespondenceSet& cs) {
    nlohmann::json j;
    j["source_points"] = nlohmann::json::array();
    for (const auto& p : cs.source_points) j["source_points"].push_back({p[0], p[1]});
    j["target_points"] = nlohmann::json::array();
    for (const auto& p : cs.target_points) j["target_points"].push_back({p[0], p[1]});
    j["candidates"] = nlohmann::json::array();
    for (const auto& [p, q] : cs.candidates) j["candidates"].push_back({p, q});
    if (!cs.truth.empty()) {
        j["truth"] = nlohmann::json::array();
        for (const auto& [p, q] : cs.truth) j["truth"].push_back({p, q});
    }
    out << j.dump(2) << "\n";
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw detail::io_error(path, "cannot open for reading");
    return detail::read_stream(in);
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw detail::io_error(path, "cannot open for writing");
    out << content;
}

}  // namespace hgshift
