#include "cadlag/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cadlag {

namespace {

[[noreturn]] void parse_error(int line, const std::string& what) {
    throw std::invalid_argument("parse error at line " + std::to_string(line) + ": " + what);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

struct Tokenized {
    std::vector<std::vector<std::string>> lines;  // tokenized, comments stripped
    std::vector<int> line_numbers;
};

Tokenized tokenize(std::istream& in) {
    Tokenized t;
    std::string raw;
    int ln = 0;
    while (std::getline(in, raw)) {
        ++ln;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.resize(hash);
        std::istringstream ls(raw);
        std::vector<std::string> toks;
        std::string tok;
        while (ls >> tok) toks.push_back(tok);
        if (!toks.empty()) {
            t.lines.push_back(std::move(toks));
            t.line_numbers.push_back(ln);
        }
    }
    return t;
}

double to_real(const std::string& s, int line) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size() || !std::isfinite(v)) parse_error(line, "bad number '" + s + "'");
        return v;
    } catch (const std::invalid_argument&) {
        parse_error(line, "bad number '" + s + "'");
    } catch (const std::out_of_range&) {
        parse_error(line, "number out of range '" + s + "'");
    }
}

}  // namespace

std::string write_path(const CadlagPath& x) {
    std::ostringstream os;
    os << "# cadlag path\n";
    if (x.domain() != 1.0) os << "domain " << fmt(x.domain()) << "\n";
    bool pl_ok = true;  // continuous piecewise linear?
    const auto& segs = x.segments();
    for (std::size_t i = 0; i < segs.size(); ++i) {
        double next = i + 1 < segs.size() ? segs[i + 1].value : x.terminal();
        if (segs[i].kind != SegmentKind::Linear || segs[i].end_value != next) pl_ok = false;
    }
    if (x.is_step()) {
        os << "kind step\nbreaks";
        for (const auto& s : segs) os << " " << fmt(s.start);
        os << "\nvalues";
        for (const auto& s : segs) os << " " << fmt(s.value);
        os << "\nterminal " << fmt(x.terminal()) << "\n";
    } else if (pl_ok) {
        os << "kind pl\nbreaks";
        for (const auto& s : segs) os << " " << fmt(s.start);
        os << "\nvalues";
        for (const auto& s : segs) os << " " << fmt(s.value);
        os << "\nterminal " << fmt(x.terminal()) << "\n";
    } else {
        os << "kind segments\n";
        for (const auto& s : segs)
            os << "seg " << fmt(s.start) << " " << fmt(s.value) << " " << fmt(s.end_value)
               << " " << (s.kind == SegmentKind::Constant ? "const" : "lin") << "\n";
        os << "terminal " << fmt(x.terminal()) << "\n";
    }
    return os.str();
}

CadlagPath read_path(std::istream& in) {
    Tokenized t = tokenize(in);
    std::string kind;
    double domain = 1.0, terminal = 0.0;
    bool have_terminal = false;
    std::vector<double> breaks, values;
    std::vector<Segment> segs;
    for (std::size_t i = 0; i < t.lines.size(); ++i) {
        const auto& toks = t.lines[i];
        int ln = t.line_numbers[i];
        const std::string& key = toks[0];
        if (key == "kind") {
            if (toks.size() != 2) parse_error(ln, "kind needs one value");
            kind = toks[1];
        } else if (key == "domain") {
            if (toks.size() != 2) parse_error(ln, "domain needs one value");
            domain = to_real(toks[1], ln);
        } else if (key == "breaks") {
            for (std::size_t k = 1; k < toks.size(); ++k) breaks.push_back(to_real(toks[k], ln));
        } else if (key == "values") {
            for (std::size_t k = 1; k < toks.size(); ++k) values.push_back(to_real(toks[k], ln));
        } else if (key == "terminal") {
            if (toks.size() != 2) parse_error(ln, "terminal needs one value");
            terminal = to_real(toks[1], ln);
            have_terminal = true;
        } else if (key == "seg") {
            if (toks.size() != 5) parse_error(ln, "seg needs start value end_value kind");
            Segment s;
            s.start = to_real(toks[1], ln);
            s.value = to_real(toks[2], ln);
            s.end_value = to_real(toks[3], ln);
            if (toks[4] == "const") s.kind = SegmentKind::Constant;
            else if (toks[4] == "lin") s.kind = SegmentKind::Linear;
            else parse_error(ln, "segment kind must be const or lin");
            segs.push_back(s);
        } else {
            parse_error(ln, "unknown field '" + key + "'");
        }
    }
    if (kind == "step") {
        if (breaks.size() != values.size() || breaks.empty())
            parse_error(0, "step path needs matching nonempty breaks/values");
        if (!have_terminal) parse_error(0, "step path needs terminal");
        return CadlagPath::step(breaks, values, terminal, domain);
    }
    if (kind == "pl") {
        if (breaks.size() != values.size() || breaks.empty())
            parse_error(0, "pl path needs matching nonempty breaks/values");
        if (!have_terminal) parse_error(0, "pl path needs terminal");
        std::vector<double> ts = breaks, vs = values;
        ts.push_back(domain);
        vs.push_back(terminal);
        return CadlagPath::piecewise_linear(ts, vs);
    }
    if (kind == "segments") {
        if (segs.empty()) parse_error(0, "segments path needs seg lines");
        if (!have_terminal) parse_error(0, "segments path needs terminal");
        return CadlagPath::from_segments(std::move(segs), terminal, domain);
    }
    parse_error(0, "missing or unknown kind (expect step, pl, or segments)");
}

CadlagPath read_path_file(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw std::invalid_argument("cannot open path file: " + filename);
    return read_path(in);
}

void write_path_file(const CadlagPath& x, const std::string& filename) {
    std::ofstream out(filename);
    if (!out) throw std::invalid_argument("cannot write path file: " + filename);
    out << write_path(x);
}

std::string write_measure(const DiscreteMeasure& m) {
    std::ostringstream os;
    os << "# discrete measure\natoms";
    for (const auto& a : m.atoms()) os << " " << a;
    os << "\nweights";
    for (double w : m.weights()) os << " " << fmt(w);
    os << "\ndist\n";
    for (const auto& row : m.dist()) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << fmt(row[j]);
        os << "\n";
    }
    return os.str();
}

DiscreteMeasure read_measure(std::istream& in) {
    Tokenized t = tokenize(in);
    std::vector<std::string> atoms;
    std::vector<double> weights;
    std::vector<std::vector<double>> dist;
    bool in_dist = false;
    for (std::size_t i = 0; i < t.lines.size(); ++i) {
        const auto& toks = t.lines[i];
        int ln = t.line_numbers[i];
        if (in_dist) {
            std::vector<double> row;
            for (const auto& s : toks) row.push_back(to_real(s, ln));
            dist.push_back(std::move(row));
            continue;
        }
        const std::string& key = toks[0];
        if (key == "atoms") {
            atoms.assign(toks.begin() + 1, toks.end());
        } else if (key == "weights") {
            for (std::size_t k = 1; k < toks.size(); ++k) weights.push_back(to_real(toks[k], ln));
        } else if (key == "dist") {
            in_dist = true;
        } else {
            parse_error(ln, "unknown field '" + key + "'");
        }
    }
    if (atoms.empty()) throw std::invalid_argument("measure: missing atoms");
    return DiscreteMeasure(std::move(atoms), std::move(weights), std::move(dist));
}

DiscreteMeasure read_measure_file(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw std::invalid_argument("cannot open measure file: " + filename);
    return read_measure(in);
}

}  // namespace cadlag
