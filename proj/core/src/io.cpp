#include "anosov/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace anosov {

using Json = nlohmann::ordered_json;

namespace {

Json rect_to_json(const ToralAutomorphism& f, const Rectangle& r) {
    const TorusPoint base = base_point(f, r);
    const double hu = r.width_u().to_double() * f.norm_u / 2;
    const double hs = r.width_s().to_double() * f.norm_s / 2;
    Json j;
    j["base"] = {base.x(), base.y()};
    j["iu"] = {-hu, hu};
    j["is"] = {-hs, hs};
    j["flags"] = {r.closed.u_lo, r.closed.u_hi, r.closed.s_lo, r.closed.s_hi};
    j["exact"] = {{"u_lo", r.u_range.lo.str()},
                  {"u_hi", r.u_range.hi.str()},
                  {"s_lo", r.s_range.lo.str()},
                  {"s_hi", r.s_range.hi.str()}};
    return j;
}

Rectangle rect_from_json(const Json& j, std::int64_t disc) {
    if (!j.contains("exact")) throw Error("partition_from_json: cell missing exact endpoints");
    const auto& e = j.at("exact");
    Rectangle r;
    r.u_range = {QuadVal::parse(e.at("u_lo").get<std::string>(), disc),
                 QuadVal::parse(e.at("u_hi").get<std::string>(), disc)};
    r.s_range = {QuadVal::parse(e.at("s_lo").get<std::string>(), disc),
                 QuadVal::parse(e.at("s_hi").get<std::string>(), disc)};
    const auto& fl = j.at("flags");
    r.closed = {fl.at(0).get<bool>(), fl.at(1).get<bool>(), fl.at(2).get<bool>(),
                fl.at(3).get<bool>()};
    return r;
}

}  // namespace

std::string partition_to_json(const ToralAutomorphism& f, const ConstantsBudget& budget,
                              const MarkovPartition& partition) {
    Json j;
    j["matrix"] = {f.m[0], f.m[1], f.m[2], f.m[3]};
    j["disc"] = f.disc;
    j["budget"] = {{"rho", budget.rho},     {"epsilon", budget.epsilon},
                   {"delta", budget.delta}, {"beta", budget.beta},
                   {"alpha", budget.alpha}, {"gamma", budget.gamma}};
    j["cells"] = Json::array();
    for (const auto& c : partition.cells) j["cells"].push_back(rect_to_json(f, c));
    j["provenance"] = partition.provenance;
    j["diameter"] = partition.diameter;
    return j.dump(2) + "\n";
}

PartitionFile partition_from_json(const std::string& text) {
    Json j = Json::parse(text);
    PartitionFile out;
    const auto& m = j.at("matrix");
    out.matrix = {m.at(0).get<std::int64_t>(), m.at(1).get<std::int64_t>(),
                  m.at(2).get<std::int64_t>(), m.at(3).get<std::int64_t>()};
    const ToralAutomorphism f = make_automorphism(out.matrix);
    const auto& b = j.at("budget");
    out.budget.rho = b.at("rho").get<double>();
    out.budget.epsilon = b.at("epsilon").get<double>();
    out.budget.delta = b.at("delta").get<double>();
    out.budget.beta = b.at("beta").get<double>();
    out.budget.alpha = b.at("alpha").get<double>();
    out.budget.gamma = b.at("gamma").get<double>();
    for (const auto& cj : j.at("cells"))
        out.partition.cells.push_back(rect_from_json(cj, f.disc));
    if (j.contains("provenance"))
        out.partition.provenance = j.at("provenance").get<std::vector<std::string>>();
    out.partition.diameter = j.at("diameter").get<double>();
    return out;
}

std::string matrix_to_csv(const TransitionMatrix& A) {
    std::ostringstream os;
    for (std::size_t i = 0; i < A.m; ++i) {
        for (std::size_t j = 0; j < A.m; ++j) {
            if (j) os << ',';
            os << (A.at(i, j) ? '1' : '0');
        }
        os << '\n';
    }
    return os.str();
}

TransitionMatrix matrix_from_csv(const std::string& text) {
    TransitionMatrix A;
    std::istringstream is(text);
    std::string line;
    std::vector<std::vector<std::uint8_t>> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::uint8_t> row;
        std::istringstream ls(line);
        std::string tok;
        while (std::getline(ls, tok, ',')) {
            if (tok != "0" && tok != "1") throw Error("matrix_from_csv: entry not 0/1");
            row.push_back(tok == "1" ? 1 : 0);
        }
        rows.push_back(std::move(row));
    }
    A.m = rows.size();
    for (const auto& r : rows)
        if (r.size() != A.m) throw Error("matrix_from_csv: not square");
    A.entries.reserve(A.m * A.m);
    for (const auto& r : rows) A.entries.insert(A.entries.end(), r.begin(), r.end());
    return A;
}

std::vector<TorusPoint> pseudo_orbit_from_text(const std::string& text) {
    std::vector<TorusPoint> pts;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        double x = 0, y = 0;
        if (!(ls >> x >> y)) throw Error("pseudo_orbit_from_text: expected 'x y' per line");
        pts.emplace_back(x, y);
    }
    return pts;
}

std::string pseudo_orbit_to_text(const std::vector<TorusPoint>& points) {
    std::ostringstream os;
    char buf[64];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x(), p.y());
        os << buf;
    }
    return os.str();
}

std::string partition_to_svg(const ToralAutomorphism& f, const MarkovPartition& partition) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\" width=\"800\" "
          "height=\"800\">\n<rect width=\"1\" height=\"1\" fill=\"white\"/>\n";
    char buf[256];
    for (std::size_t i = 0; i < partition.cells.size(); ++i) {
        const Rectangle& r = partition.cells[i];
        const QuadVec c = r.center_eigen();
        const double hu = r.width_u().to_double() / 2, hs = r.width_s().to_double() / 2;
        const double vux = f.v_u.x.to_double(), vuy = f.v_u.y.to_double();
        const double vsx = f.v_s.x.to_double(), vsy = f.v_s.y.to_double();
        const QuadVec cc = f.cartesian_of(c);
        double cx = cc.x.to_double(), cy = cc.y.to_double();
        cx -= std::floor(cx);
        cy -= std::floor(cy);
        const int hue = static_cast<int>((i * 47) % 360);
        for (int dx = -1; dx <= 1; ++dx) {
            for (int dy = -1; dy <= 1; ++dy) {
                const double ox = cx + dx, oy = cy + dy;
                if (ox < -0.6 || ox > 1.6 || oy < -0.6 || oy > 1.6) continue;
                std::snprintf(buf, sizeof buf,
                              "<polygon points=\"%.6f,%.6f %.6f,%.6f %.6f,%.6f %.6f,%.6f\" "
                              "fill=\"hsl(%d,60%%,70%%)\" stroke=\"black\" "
                              "stroke-width=\"0.0015\"/>\n",
                              ox - hu * vux - hs * vsx, 1 - (oy - hu * vuy - hs * vsy),
                              ox + hu * vux - hs * vsx, 1 - (oy + hu * vuy - hs * vsy),
                              ox + hu * vux + hs * vsx, 1 - (oy + hu * vuy + hs * vsy),
                              ox - hu * vux + hs * vsx, 1 - (oy - hu * vuy + hs * vsy), hue);
                os << buf;
            }
        }
    }
    os << "</svg>\n";
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("read_file: cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("write_file: cannot open " + path);
    out << content;
}

}  // namespace anosov
