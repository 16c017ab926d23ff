#include "core/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace gtsp {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

// Round to nearest integer, TSPLIB style.
std::int32_t nint(double x) { return static_cast<std::int32_t>(x + 0.5); }

std::int32_t euc2d_dist(double x1, double y1, double x2, double y2) {
    double dx = x1 - x2, dy = y1 - y2;
    return nint(std::sqrt(dx * dx + dy * dy));
}

std::int32_t ceil2d_dist(double x1, double y1, double x2, double y2) {
    double dx = x1 - x2, dy = y1 - y2;
    return static_cast<std::int32_t>(std::ceil(std::sqrt(dx * dx + dy * dy)));
}

std::int32_t att_dist(double x1, double y1, double x2, double y2) {
    double dx = x1 - x2, dy = y1 - y2;
    double r = std::sqrt((dx * dx + dy * dy) / 10.0);
    std::int32_t t = nint(r);
    return t < r ? t + 1 : t;
}

// Coordinates are DDD.MM (degrees and minutes); the truncation toward zero
// when splitting them is part of the published definition.
double geo_radians(double coord) {
    constexpr double kPi = 3.141592;
    double deg = std::trunc(coord);
    double min = coord - deg;
    return kPi * (deg + 5.0 * min / 3.0) / 180.0;
}

std::int32_t geo_dist(double lat1, double lon1, double lat2, double lon2) {
    constexpr double kRadius = 6378.388;
    double q1 = std::cos(lon1 - lon2);
    double q2 = std::cos(lat1 - lat2);
    double q3 = std::cos(lat1 + lat2);
    double d = kRadius * std::acos(0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)) + 1.0;
    return static_cast<std::int32_t>(d);
}

std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

struct Reader {
    std::istream& in;
    int line_no = 0;

    bool next_line(std::string& out) {
        if (!std::getline(in, out)) return false;
        ++line_no;
        return true;
    }
};

enum class ExplicitFormat { FullMatrix, UpperRow, LowerDiagRow, UpperDiagRow };

struct RawInstance {
    std::string name;
    std::string type;
    int dimension = -1;
    std::string weight_type;
    std::string weight_format;
    std::vector<std::pair<double, double>> coords;
    std::vector<std::int64_t> weights;
    int sets = -1;
    std::vector<std::vector<int>> members;  // 0-based node ids per cluster
};

std::int64_t parse_int(const std::string& tok, const Reader& r, const char* what) {
    std::int64_t value = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        throw ParseError("expected integer " + std::string(what) + ", got '" + tok + "'",
                         r.line_no);
    return value;
}

double parse_real(const std::string& tok, const Reader& r, const char* what) {
    char* end = nullptr;
    double value = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || tok.empty())
        throw ParseError("expected number " + std::string(what) + ", got '" + tok + "'",
                         r.line_no);
    return value;
}

void read_coord_section(Reader& r, RawInstance& raw) {
    if (raw.dimension <= 0)
        throw ParseError("NODE_COORD_SECTION before DIMENSION", r.line_no);
    raw.coords.assign(raw.dimension, {0.0, 0.0});
    std::vector<char> seen(raw.dimension, 0);
    std::string line;
    for (int read = 0; read < raw.dimension;) {
        if (!r.next_line(line))
            throw ParseError("unexpected end of file inside NODE_COORD_SECTION", r.line_no);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks.size() != 3)
            throw ParseError("expected 'id x y' in NODE_COORD_SECTION", r.line_no);
        auto id = parse_int(toks[0], r, "node id");
        if (id < 1 || id > raw.dimension)
            throw ParseError("node id " + std::to_string(id) + " out of range 1.." +
                                 std::to_string(raw.dimension),
                             r.line_no);
        if (seen[id - 1])
            throw ParseError("duplicate coordinates for node " + std::to_string(id), r.line_no);
        seen[id - 1] = 1;
        raw.coords[id - 1] = {parse_real(toks[1], r, "x coordinate"),
                              parse_real(toks[2], r, "y coordinate")};
        ++read;
    }
}

void read_weight_section(Reader& r, RawInstance& raw, std::size_t count) {
    raw.weights.reserve(count);
    std::string line;
    while (raw.weights.size() < count) {
        if (!r.next_line(line))
            throw ParseError("unexpected end of file inside EDGE_WEIGHT_SECTION", r.line_no);
        for (const auto& tok : split_ws(line)) {
            if (raw.weights.size() == count)
                throw ParseError("surplus value in EDGE_WEIGHT_SECTION", r.line_no);
            raw.weights.push_back(parse_int(tok, r, "edge weight"));
        }
    }
}

std::size_t weight_count(ExplicitFormat fmt, std::size_t n) {
    switch (fmt) {
        case ExplicitFormat::FullMatrix: return n * n;
        case ExplicitFormat::UpperRow: return n * (n - 1) / 2;
        case ExplicitFormat::LowerDiagRow:
        case ExplicitFormat::UpperDiagRow: return n * (n + 1) / 2;
    }
    return 0;
}

ExplicitFormat explicit_format(const std::string& f, int line_no) {
    if (f == "FULL_MATRIX") return ExplicitFormat::FullMatrix;
    if (f == "UPPER_ROW") return ExplicitFormat::UpperRow;
    if (f == "LOWER_DIAG_ROW") return ExplicitFormat::LowerDiagRow;
    if (f == "UPPER_DIAG_ROW") return ExplicitFormat::UpperDiagRow;
    if (f.empty())
        throw ParseError("EXPLICIT weights need EDGE_WEIGHT_FORMAT", line_no);
    throw FormatError("unsupported EDGE_WEIGHT_FORMAT '" + f + "'");
}

std::vector<std::vector<std::int64_t>> expand_matrix(const RawInstance& raw, ExplicitFormat fmt) {
    std::size_t n = static_cast<std::size_t>(raw.dimension);
    std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n, 0));
    std::size_t k = 0;
    switch (fmt) {
        case ExplicitFormat::FullMatrix:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) m[i][j] = raw.weights[k++];
            break;
        case ExplicitFormat::UpperRow:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    m[i][j] = raw.weights[k++];
                    m[j][i] = m[i][j];
                }
            break;
        case ExplicitFormat::LowerDiagRow:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j <= i; ++j) {
                    m[i][j] = raw.weights[k++];
                    m[j][i] = m[i][j];
                }
            break;
        case ExplicitFormat::UpperDiagRow:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    m[i][j] = raw.weights[k++];
                    m[j][i] = m[i][j];
                }
            break;
    }
    // Some published matrices store a sentinel on the diagonal; the diagonal
    // is never a tour edge, so normalize it.
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 0;
    return m;
}

void read_set_section(Reader& r, RawInstance& raw) {
    if (raw.dimension <= 0)
        throw ParseError("GTSP_SET_SECTION before DIMENSION", r.line_no);
    if (raw.sets <= 0)
        throw ParseError("GTSP_SET_SECTION before GTSP_SETS", r.line_no);
    raw.members.assign(raw.sets, {});
    std::vector<int> assigned_to(raw.dimension, -1);

    // Token stream: each set is "k v1 v2 ... -1"; sets may wrap lines.
    std::vector<std::int64_t> pending;
    std::size_t pos = 0;
    std::string line;
    auto next_token = [&]() -> std::int64_t {
        while (pos == pending.size()) {
            if (!r.next_line(line))
                throw ParseError("unexpected end of file inside GTSP_SET_SECTION", r.line_no);
            pending.clear();
            pos = 0;
            for (const auto& tok : split_ws(line)) pending.push_back(parse_int(tok, r, "set entry"));
        }
        return pending[pos++];
    };

    std::vector<char> seen(raw.sets, 0);
    for (int s = 0; s < raw.sets; ++s) {
        auto id = next_token();
        if (id < 1 || id > raw.sets)
            throw ParseError("set id " + std::to_string(id) + " out of range 1.." +
                                 std::to_string(raw.sets),
                             r.line_no);
        if (seen[id - 1])
            throw ParseError("duplicate set id " + std::to_string(id), r.line_no);
        seen[id - 1] = 1;
        auto& set = raw.members[id - 1];
        for (;;) {
            auto v = next_token();
            if (v == -1) break;
            if (v < 1 || v > raw.dimension)
                throw ParseError("node id " + std::to_string(v) + " out of range 1.." +
                                     std::to_string(raw.dimension),
                                 r.line_no);
            if (assigned_to[v - 1] != -1)
                throw ParseError("node " + std::to_string(v) + " appears in sets " +
                                     std::to_string(assigned_to[v - 1]) + " and " +
                                     std::to_string(id),
                                 r.line_no);
            assigned_to[v - 1] = static_cast<int>(id);
            set.push_back(static_cast<int>(v) - 1);
        }
        if (set.empty())
            throw ParseError("set " + std::to_string(id) + " is empty", r.line_no);
    }
    for (int v = 0; v < raw.dimension; ++v)
        if (assigned_to[v] == -1)
            throw ParseError("node " + std::to_string(v + 1) + " not assigned to any set",
                             r.line_no);
}

RawInstance parse_raw(std::istream& in, bool expect_sets) {
    Reader r{in};
    RawInstance raw;
    std::string line;
    bool have_weight_section = false;
    while (r.next_line(line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (line == "EOF") break;

        auto colon = line.find(':');
        if (colon != std::string::npos &&
            line.compare(0, colon, "GTSP_SET_SECTION") != 0) {
            std::string key = trim(line.substr(0, colon));
            std::string value = trim(line.substr(colon + 1));
            if (key == "NAME") {
                raw.name = value;
            } else if (key == "TYPE") {
                auto toks = split_ws(value);
                raw.type = toks.empty() ? "" : toks[0];
            } else if (key == "DIMENSION") {
                raw.dimension = static_cast<int>(parse_int(value, r, "DIMENSION"));
                if (raw.dimension <= 0)
                    throw ParseError("DIMENSION must be positive", r.line_no);
            } else if (key == "EDGE_WEIGHT_TYPE") {
                raw.weight_type = value;
            } else if (key == "EDGE_WEIGHT_FORMAT") {
                raw.weight_format = value;
            } else if (key == "GTSP_SETS") {
                raw.sets = static_cast<int>(parse_int(value, r, "GTSP_SETS"));
                if (raw.sets <= 0)
                    throw ParseError("GTSP_SETS must be positive", r.line_no);
            } else {
                // COMMENT, NODE_COORD_TYPE, DISPLAY_DATA_TYPE and friends.
            }
            continue;
        }

        if (line == "NODE_COORD_SECTION") {
            read_coord_section(r, raw);
        } else if (line == "EDGE_WEIGHT_SECTION") {
            if (raw.dimension <= 0)
                throw ParseError("EDGE_WEIGHT_SECTION before DIMENSION", r.line_no);
            if (raw.weight_type != "EXPLICIT")
                throw ParseError("EDGE_WEIGHT_SECTION requires EDGE_WEIGHT_TYPE EXPLICIT",
                                 r.line_no);
            auto fmt = explicit_format(raw.weight_format, r.line_no);
            read_weight_section(r, raw, weight_count(fmt, static_cast<std::size_t>(raw.dimension)));
            have_weight_section = true;
        } else if (line == "DISPLAY_DATA_SECTION") {
            if (raw.dimension <= 0)
                throw ParseError("DISPLAY_DATA_SECTION before DIMENSION", r.line_no);
            std::string skipped;
            for (int i = 0; i < raw.dimension; ++i)
                if (!r.next_line(skipped))
                    throw ParseError("unexpected end of file inside DISPLAY_DATA_SECTION",
                                     r.line_no);
        } else if (line == "GTSP_SET_SECTION" || line.rfind("GTSP_SET_SECTION", 0) == 0) {
            if (!expect_sets)
                throw ParseError("GTSP_SET_SECTION in a plain TSP file", r.line_no);
            read_set_section(r, raw);
        } else {
            throw ParseError("unrecognized line '" + line + "'", r.line_no);
        }
    }

    if (raw.dimension <= 0) throw ParseError("missing DIMENSION", r.line_no);
    if (!raw.type.empty() && raw.type != "TSP" && raw.type != "GTSP")
        throw FormatError("unsupported TYPE '" + raw.type + "'");
    if (raw.weight_type == "EXPLICIT") {
        if (!have_weight_section) throw ParseError("missing EDGE_WEIGHT_SECTION", r.line_no);
    } else if (raw.weight_type == "EUC_2D" || raw.weight_type == "CEIL_2D" ||
               raw.weight_type == "GEO" || raw.weight_type == "ATT") {
        if (raw.coords.empty()) throw ParseError("missing NODE_COORD_SECTION", r.line_no);
    } else if (raw.weight_type.empty()) {
        throw ParseError("missing EDGE_WEIGHT_TYPE", r.line_no);
    } else {
        throw FormatError("unsupported EDGE_WEIGHT_TYPE '" + raw.weight_type + "'");
    }
    if (expect_sets) {
        if (raw.sets <= 0) throw ParseError("missing GTSP_SETS", r.line_no);
        if (raw.members.empty()) throw ParseError("missing GTSP_SET_SECTION", r.line_no);
    }
    return raw;
}

NodeSet node_set_from_raw(RawInstance&& raw) {
    if (raw.weight_type == "EXPLICIT") {
        auto fmt = explicit_format(raw.weight_format, 0);
        return NodeSet::from_matrix(std::move(raw.name), expand_matrix(raw, fmt));
    }
    WeightKind kind;
    if (raw.weight_type == "EUC_2D") kind = WeightKind::Euc2d;
    else if (raw.weight_type == "CEIL_2D") kind = WeightKind::Ceil2d;
    else if (raw.weight_type == "GEO") kind = WeightKind::Geo;
    else kind = WeightKind::Att;
    return NodeSet::from_coords(std::move(raw.name), kind, std::move(raw.coords));
}

}  // namespace

const char* to_string(WeightKind kind) {
    switch (kind) {
        case WeightKind::Euc2d: return "EUC_2D";
        case WeightKind::Ceil2d: return "CEIL_2D";
        case WeightKind::Geo: return "GEO";
        case WeightKind::Att: return "ATT";
        case WeightKind::Explicit: return "EXPLICIT";
    }
    return "?";
}

NodeSet NodeSet::from_coords(std::string name, WeightKind kind,
                             std::vector<std::pair<double, double>> coords) {
    if (kind == WeightKind::Explicit)
        throw InvalidInput("explicit weights carry no coordinates");
    if (coords.empty()) throw InvalidInput("empty coordinate list");
    NodeSet ns;
    ns.name_ = std::move(name);
    ns.kind_ = kind;
    ns.coords_ = std::move(coords);
    ns.n_ = static_cast<int>(ns.coords_.size());
    ns.build_matrix();
    return ns;
}

NodeSet NodeSet::from_matrix(std::string name, std::vector<std::vector<std::int64_t>> weights) {
    std::size_t n = weights.size();
    if (n == 0) throw InvalidInput("empty weight matrix");
    NodeSet ns;
    ns.name_ = std::move(name);
    ns.kind_ = WeightKind::Explicit;
    ns.n_ = static_cast<int>(n);
    ns.matrix_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (weights[i].size() != n) throw InvalidInput("weight matrix is not square");
        for (std::size_t j = 0; j < n; ++j) {
            std::int64_t w = weights[i][j];
            if (i == j && w != 0) throw InvalidInput("weight matrix diagonal must be zero");
            if (w < 0) throw InvalidInput("negative edge weight");
            if (w != weights[j][i]) throw InvalidInput("weight matrix is not symmetric");
            if (w > std::numeric_limits<std::int32_t>::max())
                throw InvalidInput("edge weight exceeds 32-bit range");
            ns.matrix_[i * n + j] = static_cast<std::int32_t>(w);
        }
    }
    return ns;
}

void NodeSet::build_matrix() {
    std::size_t n = static_cast<std::size_t>(n_);
    matrix_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto [xi, yi] = coords_[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            auto [xj, yj] = coords_[j];
            std::int32_t d = 0;
            switch (kind_) {
                case WeightKind::Euc2d: d = euc2d_dist(xi, yi, xj, yj); break;
                case WeightKind::Ceil2d: d = ceil2d_dist(xi, yi, xj, yj); break;
                case WeightKind::Att: d = att_dist(xi, yi, xj, yj); break;
                case WeightKind::Geo:
                    d = geo_dist(geo_radians(xi), geo_radians(yi), geo_radians(xj),
                                 geo_radians(yj));
                    break;
                case WeightKind::Explicit: break;
            }
            matrix_[i * n + j] = d;
            matrix_[j * n + i] = d;
        }
    }
}

std::int64_t NodeSet::distance(int i, int j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_)
        throw InvalidInput("node index out of range");
    return dist(i, j);
}

GtspInstance::GtspInstance(std::string name, NodeSet nodes, std::vector<std::vector<int>> members)
    : name_(std::move(name)), nodes_(std::move(nodes)), members_(std::move(members)) {
    int n = nodes_.count();
    if (members_.empty()) throw InvalidInput("instance needs at least one cluster");
    cluster_of_.assign(n, -1);
    for (std::size_t c = 0; c < members_.size(); ++c) {
        if (members_[c].empty())
            throw InvalidInput("cluster " + std::to_string(c) + " is empty");
        for (int v : members_[c]) {
            if (v < 0 || v >= n)
                throw InvalidInput("node index " + std::to_string(v) + " out of range");
            if (cluster_of_[v] != -1)
                throw InvalidInput("node " + std::to_string(v) + " assigned to clusters " +
                                   std::to_string(cluster_of_[v]) + " and " + std::to_string(c));
            cluster_of_[v] = static_cast<int>(c);
        }
    }
    for (int v = 0; v < n; ++v)
        if (cluster_of_[v] == -1)
            throw InvalidInput("node " + std::to_string(v) + " not assigned to any cluster");
}

int GtspInstance::cluster_of(int node) const {
    if (node < 0 || node >= nodes_.count()) throw InvalidInput("node index out of range");
    return cluster_of_[node];
}

const std::vector<int>& GtspInstance::members(int cluster) const {
    if (cluster < 0 || cluster >= cluster_count())
        throw InvalidInput("cluster index out of range");
    return members_[static_cast<std::size_t>(cluster)];
}

NodeSet parse_tsplib(std::istream& in) {
    return node_set_from_raw(parse_raw(in, false));
}

NodeSet load_tsplib(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return parse_tsplib(in);
}

GtspInstance parse_gtsp(std::istream& in) {
    RawInstance raw = parse_raw(in, true);
    auto members = std::move(raw.members);
    std::string name = raw.name;
    return GtspInstance(std::move(name), node_set_from_raw(std::move(raw)), std::move(members));
}

GtspInstance load_gtsp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return parse_gtsp(in);
}

void write_gtsp(const GtspInstance& inst, std::ostream& out) {
    const NodeSet& ns = inst.nodes();
    int n = ns.count();
    out << "NAME: " << inst.name() << "\n";
    out << "TYPE: GTSP\n";
    out << "COMMENT: " << inst.cluster_count() << " clusters\n";
    out << "DIMENSION: " << n << "\n";
    out << "GTSP_SETS: " << inst.cluster_count() << "\n";
    out << "EDGE_WEIGHT_TYPE: " << to_string(ns.weight_kind()) << "\n";
    if (ns.weight_kind() == WeightKind::Explicit) {
        out << "EDGE_WEIGHT_FORMAT: FULL_MATRIX\n";
        out << "EDGE_WEIGHT_SECTION\n";
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) out << (j ? " " : "") << ns.dist(i, j);
            out << "\n";
        }
    } else {
        out << "NODE_COORD_SECTION\n";
        for (int i = 0; i < n; ++i) {
            auto [x, y] = ns.coords()[static_cast<std::size_t>(i)];
            out << (i + 1) << " " << fmt_double(x) << " " << fmt_double(y) << "\n";
        }
    }
    out << "GTSP_SET_SECTION\n";
    for (int c = 0; c < inst.cluster_count(); ++c) {
        out << (c + 1);
        for (int v : inst.members(c)) out << " " << (v + 1);
        out << " -1\n";
    }
    out << "EOF\n";
}

void write_gtsp_file(const GtspInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_gtsp(inst, out);
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

std::unordered_map<std::string, std::int64_t> load_best_known(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::unordered_map<std::string, std::int64_t> out;
    Reader r{in};
    std::string line;
    while (r.next_line(line)) {
        auto stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        auto toks = split_ws(stripped);
        if (toks.size() != 2)
            throw ParseError("expected 'name cost'", r.line_no);
        out[toks[0]] = parse_int(toks[1], r, "best known cost");
    }
    return out;
}

}  // namespace gtsp
