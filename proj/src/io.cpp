#include "cquant/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <sstream>

#include "cquant/errors.hpp"

namespace cquant {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ParseError((path.empty() ? std::string("document") : path) + ": " + msg);
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
        const bool ok = std::any_of(allowed.begin(), allowed.end(),
                                    [&](const char* a) { return key == a; });
        if (!ok) fail(path, "unknown field '" + key + "'");
    }
}

const json& expect_object(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    return j;
}

const json& field(const json& obj, const char* key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing field '") + key + "'");
    return *it;
}

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "expected a finite number");
    return v;
}

long long integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<long long>();
}

Point2 point(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) fail(path, "expected a point [x, y]");
    return {number(j[0], index(path, 0)), number(j[1], index(path, 1))};
}

std::vector<Point2> point_list(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of points");
    std::vector<Point2> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(point(j[i], index(path, i)));
    return out;
}

const json& array(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

ojson point_json(Point2 p) { return ojson::array({p.x, p.y}); }

ConstraintSet constraint_from_json(const json& j, const std::string& path) {
    expect_object(j, path);
    const json& type = field(j, "type", path);
    if (!type.is_string()) fail(join(path, "type"), "expected a string");
    const auto t = type.get<std::string>();
    if (t == "curve") {
        reject_unknown(j, {"type", "curve"}, path);
        return CurveConstraint{curve_from_json(field(j, "curve", path), join(path, "curve"))};
    }
    if (t == "points") {
        reject_unknown(j, {"type", "points"}, path);
        auto pts = point_list(field(j, "points", path), join(path, "points"));
        if (pts.empty()) fail(join(path, "points"), "point-set constraint must be nonempty");
        return PointSetConstraint{std::move(pts)};
    }
    if (t == "free") {
        reject_unknown(j, {"type"}, path);
        return FreePlane{};
    }
    fail(join(path, "type"), "unknown constraint type '" + t + "'");
}

SolverOptions solver_from_json(const json& j, const std::string& path) {
    expect_object(j, path);
    reject_unknown(j, {"restarts", "rng_seed", "param_tol", "max_iters", "allocation", "warm_start", "mass_tol"},
                   path);
    SolverOptions o;
    if (j.contains("restarts")) o.restarts = static_cast<int>(integer(j["restarts"], join(path, "restarts")));
    if (j.contains("rng_seed")) {
        const auto& s = j["rng_seed"];
        if (!s.is_number_unsigned()) fail(join(path, "rng_seed"), "expected a nonnegative integer");
        o.rng_seed = s.get<std::uint64_t>();
    }
    if (j.contains("param_tol")) o.param_tol = number(j["param_tol"], join(path, "param_tol"));
    if (j.contains("max_iters")) o.max_iters = static_cast<int>(integer(j["max_iters"], join(path, "max_iters")));
    if (j.contains("mass_tol")) o.mass_tol = number(j["mass_tol"], join(path, "mass_tol"));
    if (j.contains("allocation")) {
        const auto p = join(path, "allocation");
        const auto& a = array(j["allocation"], p);
        std::vector<int> counts;
        for (std::size_t i = 0; i < a.size(); ++i) counts.push_back(static_cast<int>(integer(a[i], index(p, i))));
        o.allocation = counts;
    }
    if (j.contains("warm_start")) o.warm_start = point_list(j["warm_start"], join(path, "warm_start"));
    if (o.restarts < 1) fail(join(path, "restarts"), "must be >= 1");
    if (o.max_iters < 1) fail(join(path, "max_iters"), "must be >= 1");
    if (!(o.param_tol > 0.0)) fail(join(path, "param_tol"), "must be positive");
    if (!(o.mass_tol >= 0.0)) fail(join(path, "mass_tol"), "must be nonnegative");
    return o;
}

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte);
        throw ParseError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                         ": " + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* tag_name(PointTag t) {
    switch (t) {
        case PointTag::beta: return "beta";
        case PointTag::constrained: return "constrained";
        case PointTag::free: return "free";
    }
    return "free";
}

ojson measure_json(const std::vector<Curve>& curves) {
    ojson m = ojson::array();
    for (const auto& c : curves) m.push_back(curve_to_json(c));
    return m;
}

}  // namespace

std::string format_double(double v) {
    return ojson(v).dump();
}

Curve curve_from_json(const json& j, const std::string& path) {
    expect_object(j, path);
    const json& type = field(j, "type", path);
    if (!type.is_string()) fail(join(path, "type"), "expected a string");
    const auto t = type.get<std::string>();
    try {
        if (t == "segment") {
            reject_unknown(j, {"type", "p0", "p1"}, path);
            return Curve::segment(point(field(j, "p0", path), join(path, "p0")),
                                  point(field(j, "p1", path), join(path, "p1")));
        }
        if (t == "arc") {
            reject_unknown(j, {"type", "center", "radius", "theta0", "theta1"}, path);
            return Curve::arc(point(field(j, "center", path), join(path, "center")),
                              number(field(j, "radius", path), join(path, "radius")),
                              number(field(j, "theta0", path), join(path, "theta0")),
                              number(field(j, "theta1", path), join(path, "theta1")));
        }
    } catch (const DomainError& e) {
        fail(path, e.what());
    }
    fail(join(path, "type"), "unknown curve type '" + t + "'");
}

ojson curve_to_json(const Curve& c) {
    ojson j;
    if (c.is_segment()) {
        const auto& s = c.as_segment();
        j["type"] = "segment";
        j["p0"] = point_json(s.p0);
        j["p1"] = point_json(s.p1);
    } else {
        const auto& a = c.as_arc();
        j["type"] = "arc";
        j["center"] = point_json(a.center);
        j["radius"] = a.radius;
        j["theta0"] = a.theta0;
        j["theta1"] = a.theta1;
    }
    return j;
}

ProblemFile parse_problem(const std::string& text) {
    const json doc = parse_json(text);
    expect_object(doc, "");
    reject_unknown(doc, {"schema_version", "measure", "constraints", "beta", "n", "solver"}, "");
    const auto version = integer(field(doc, "schema_version", ""), "schema_version");
    if (version != kSchemaVersion) {
        fail("schema_version", "unsupported version " + std::to_string(version));
    }
    const auto& m = array(field(doc, "measure", ""), "measure");
    if (m.empty()) fail("measure", "needs at least one curve");
    std::vector<Curve> curves;
    for (std::size_t i = 0; i < m.size(); ++i) curves.push_back(curve_from_json(m[i], index("measure", i)));

    std::vector<ConstraintSet> constraints;
    if (doc.contains("constraints")) {
        const auto& c = array(doc["constraints"], "constraints");
        for (std::size_t i = 0; i < c.size(); ++i) constraints.push_back(constraint_from_json(c[i], index("constraints", i)));
    }
    std::vector<Point2> beta;
    if (doc.contains("beta")) beta = point_list(doc["beta"], "beta");
    const auto n = integer(field(doc, "n", ""), "n");
    if (n < 1) fail("n", "must be >= 1");
    if (n < static_cast<long long>(beta.size())) fail("n", "must be at least the number of beta points");

    ProblemFile out{Problem{UniformCurveMeasure(std::move(curves)), std::move(constraints), std::move(beta),
                            static_cast<int>(n)},
                    {}};
    if (doc.contains("solver")) out.solver = solver_from_json(doc["solver"], "solver");
    const int k = out.problem.n - static_cast<int>(out.problem.beta.size());
    if (out.solver.allocation) {
        if (out.solver.allocation->size() != out.problem.constraints.size()) {
            fail("solver.allocation", "needs one count per constraint");
        }
        int sum = 0;
        for (int c : *out.solver.allocation) {
            if (c < 0) fail("solver.allocation", "counts must be nonnegative");
            sum += c;
        }
        if (sum != k) fail("solver.allocation", "counts must sum to n minus the number of beta points");
    }
    if (out.solver.warm_start && static_cast<int>(out.solver.warm_start->size()) != k) {
        fail("solver.warm_start", "needs n minus the number of beta points");
    }
    return out;
}

ProblemFile load_problem(const std::string& path) { return parse_problem(read_file(path)); }

ojson problem_to_json(const Problem& problem, const SolverOptions& solver) {
    ojson j;
    j["schema_version"] = kSchemaVersion;
    j["measure"] = measure_json(problem.measure.curves());
    ojson cons = ojson::array();
    for (const auto& c : problem.constraints) {
        ojson cj;
        if (const auto* cc = std::get_if<CurveConstraint>(&c)) {
            cj["type"] = "curve";
            cj["curve"] = curve_to_json(cc->curve);
        } else if (const auto* ps = std::get_if<PointSetConstraint>(&c)) {
            cj["type"] = "points";
            cj["points"] = ojson::array();
            for (const Point2 p : ps->points) cj["points"].push_back(point_json(p));
        } else {
            cj["type"] = "free";
        }
        cons.push_back(cj);
    }
    j["constraints"] = cons;
    j["beta"] = ojson::array();
    for (const Point2 b : problem.beta) j["beta"].push_back(point_json(b));
    j["n"] = problem.n;
    ojson s;
    s["restarts"] = solver.restarts;
    s["rng_seed"] = solver.rng_seed;
    s["param_tol"] = solver.param_tol;
    s["max_iters"] = solver.max_iters;
    s["mass_tol"] = solver.mass_tol;
    if (solver.allocation) s["allocation"] = *solver.allocation;
    if (solver.warm_start) {
        s["warm_start"] = ojson::array();
        for (const Point2 p : *solver.warm_start) s["warm_start"].push_back(point_json(p));
    }
    j["solver"] = s;
    return j;
}

ojson quantizer_to_json(const Problem& problem, const Quantizer& q) {
    ojson j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "quantizer";
    j["n"] = problem.n;
    j["measure"] = measure_json(problem.measure.curves());
    j["distortion"] = q.distortion;
    j["converged"] = q.converged;
    j["degenerate"] = !q.degenerate_points.empty();
    j["degenerate_points"] = q.degenerate_points;
    ojson pts = ojson::array();
    for (std::size_t i = 0; i < q.points.size(); ++i) {
        const auto& tp = q.points[i];
        ojson p;
        p["tag"] = tag_name(tp.tag);
        if (tp.tag == PointTag::constrained) {
            p["constraint"] = tp.constraint;
            p["s"] = tp.s;
        }
        p["x"] = tp.position.x;
        p["y"] = tp.position.y;
        p["mass"] = q.masses[i];
        pts.push_back(p);
    }
    j["points"] = pts;
    return j;
}

ojson closed_form_to_json(const std::string& scenario, int n, const std::vector<Curve>& support,
                          const ClosedFormResult& r) {
    ojson j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "closed_form";
    j["scenario"] = scenario;
    j["n"] = n;
    j["measure"] = measure_json(support);
    j["error"] = r.error;
    if (r.printed_error) j["printed_error"] = *r.printed_error;
    if (!r.allocation.empty()) j["allocation"] = r.allocation;
    ojson pts = ojson::array();
    for (const Point2 p : r.points) {
        ojson pj;
        pj["x"] = p.x;
        pj["y"] = p.y;
        pts.push_back(pj);
    }
    j["points"] = pts;
    return j;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << kSweepHeader << '\n';
    char buf[64];
    for (const auto& r : rows) {
        os << r.n << ',';
        std::snprintf(buf, sizeof buf, "%.17g", r.error);
        os << buf << ',';
        for (std::size_t i = 0; i < r.allocation.size(); ++i) {
            if (i) os << ';';
            os << r.allocation[i];
        }
        std::snprintf(buf, sizeof buf, "%.3f", r.wall_time_ms);
        os << ',' << buf << '\n';
    }
}

std::vector<SweepRow> read_sweep_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError("line 1: empty CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kSweepHeader) throw ParseError(std::string("line 1: expected header '") + kSweepHeader + "'");
    std::vector<SweepRow> rows;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string col;
        while (std::getline(ss, col, ',')) cols.push_back(col);
        if (!line.empty() && line.back() == ',') cols.emplace_back();
        if (cols.size() != 4) throw ParseError("line " + std::to_string(lineno) + ": expected 4 columns");
        SweepRow r;
        try {
            std::size_t used = 0;
            r.n = std::stoi(cols[0], &used);
            if (used != cols[0].size()) throw std::invalid_argument("n");
            r.error = std::stod(cols[1], &used);
            if (used != cols[1].size()) throw std::invalid_argument("error");
            if (!cols[2].empty()) {
                std::stringstream as(cols[2]);
                std::string part;
                while (std::getline(as, part, ';')) r.allocation.push_back(std::stoi(part));
            }
            r.wall_time_ms = cols[3].empty() ? 0.0 : std::stod(cols[3]);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(lineno) + ": malformed number");
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

ojson report_to_json(const AsymptoticsReport& rep) {
    ojson j;
    j["v_infinity"] = rep.v_infinity;
    j["dim_lower"] = rep.dim_lower;
    j["dim_upper"] = rep.dim_upper;
    j["kappa"] = rep.kappa;
    j["coeff_lower"] = rep.coeff_lower;
    j["coeff_upper"] = rep.coeff_upper;
    j["tail_window"] = rep.tail_window;
    return j;
}

Figure figure_from_result(const std::string& text) {
    const json doc = parse_json(text);
    expect_object(doc, "");
    Figure fig;
    const auto& m = array(field(doc, "measure", ""), "measure");
    for (std::size_t i = 0; i < m.size(); ++i) fig.support.push_back(curve_from_json(m[i], index("measure", i)));
    if (fig.support.empty()) fail("measure", "needs at least one curve");
    const auto& pts = array(field(doc, "points", ""), "points");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto p = index("points", i);
        expect_object(pts[i], p);
        fig.points.push_back({number(field(pts[i], "x", p), join(p, "x")), number(field(pts[i], "y", p), join(p, "y"))});
        std::string tag = "point";
        if (pts[i].contains("tag") && pts[i]["tag"].is_string()) tag = pts[i]["tag"].get<std::string>();
        fig.tags.push_back(tag);
    }
    return fig;
}

namespace {

struct Canvas {
    double min_x = 0.0;
    double max_y = 0.0;
    double width = 0.0;
    double height = 0.0;

    static constexpr double kScale = 200.0;
    static constexpr double kMargin = 20.0;

    double x(double v) const { return kMargin + (v - min_x) * kScale; }
    double y(double v) const { return kMargin + (max_y - v) * kScale; }
};

void extend(double& lo_x, double& hi_x, double& lo_y, double& hi_y, Point2 p) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

}  // namespace

std::string render_svg(const Figure& fig) {
    double lo_x = INFINITY;
    double hi_x = -INFINITY;
    double lo_y = INFINITY;
    double hi_y = -INFINITY;
    constexpr int kSamples = 64;
    for (const auto& c : fig.support) {
        for (int i = 0; i <= kSamples; ++i) extend(lo_x, hi_x, lo_y, hi_y, c.eval(c.length() * i / kSamples));
    }
    for (const Point2 p : fig.points) extend(lo_x, hi_x, lo_y, hi_y, p);

    Canvas cv{lo_x, hi_y, 0.0, 0.0};
    cv.width = (hi_x - lo_x) * Canvas::kScale + 2 * Canvas::kMargin;
    cv.height = (hi_y - lo_y) * Canvas::kScale + 2 * Canvas::kMargin;

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(cv.width) << "\" height=\""
       << fmt(cv.height) << "\" viewBox=\"0 0 " << fmt(cv.width) << ' ' << fmt(cv.height) << "\">\n";
    os << "<g fill=\"none\" stroke=\"black\" stroke-width=\"1.5\">\n";
    for (const auto& c : fig.support) {
        if (c.is_segment()) {
            const auto& s = c.as_segment();
            os << "<line x1=\"" << fmt(cv.x(s.p0.x)) << "\" y1=\"" << fmt(cv.y(s.p0.y)) << "\" x2=\""
               << fmt(cv.x(s.p1.x)) << "\" y2=\"" << fmt(cv.y(s.p1.y)) << "\"/>\n";
        } else {
            // Two halves so that no piece needs the large-arc flag.
            const auto& a = c.as_arc();
            const double r = a.radius * Canvas::kScale;
            const Point2 p0 = c.eval(0.0);
            const Point2 pm = c.eval(0.5 * c.length());
            const Point2 p1 = c.eval(c.length());
            os << "<path d=\"M " << fmt(cv.x(p0.x)) << ' ' << fmt(cv.y(p0.y));
            for (const Point2 q : {pm, p1}) {
                os << " A " << fmt(r) << ' ' << fmt(r) << " 0 0 0 " << fmt(cv.x(q.x)) << ' ' << fmt(cv.y(q.y));
            }
            os << "\"/>\n";
        }
    }
    os << "</g>\n";

    if (!fig.points.empty()) {
        os << "<g fill=\"none\" stroke=\"gray\" stroke-width=\"1\">\n";
        for (const auto& c : fig.support) {
            for (double s : voronoi_breakpoints(c, fig.points)) {
                const Point2 p = c.eval(s);
                const Point2 t = c.tangent(s);
                const Point2 nrm{-t.y, t.x};
                const Point2 a = p + 0.03 * nrm;
                const Point2 b = p - 0.03 * nrm;
                os << "<line x1=\"" << fmt(cv.x(a.x)) << "\" y1=\"" << fmt(cv.y(a.y)) << "\" x2=\"" << fmt(cv.x(b.x))
                   << "\" y2=\"" << fmt(cv.y(b.y)) << "\"/>\n";
            }
        }
        os << "</g>\n";
    }

    os << "<g stroke=\"none\">\n";
    for (std::size_t i = 0; i < fig.points.size(); ++i) {
        const bool beta = i < fig.tags.size() && fig.tags[i] == "beta";
        os << "<circle cx=\"" << fmt(cv.x(fig.points[i].x)) << "\" cy=\"" << fmt(cv.y(fig.points[i].y))
           << "\" r=\"4\" fill=\"" << (beta ? "red" : "blue") << "\"/>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace cquant
