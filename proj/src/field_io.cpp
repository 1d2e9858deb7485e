#include "mildflow/field_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "mildflow/errors.hpp"

namespace mildflow {
namespace {

[[noreturn]] void malformed(int line, const std::string& what) {
    throw ValidationError("spectral dump line " + std::to_string(line) + ": " + what);
}

}  // namespace

void write_spectral_dump(std::ostream& os, const VectorField& u) {
    const SpectralGrid& g = u.grid();
    os << "# mildflow-spectral v1\n";
    os << std::setprecision(17);
    os << "grid " << g.dim() << ' ' << g.n() << ' ' << g.box_length() << '\n';
    os << "components " << u.dim() << " divergence_free " << (u.divergence_free() ? 1 : 0) << '\n';
    for (int j = 0; j < u.dim(); ++j) {
        os << "component " << j << '\n';
        for (std::size_t flat = 0; flat < g.size(); ++flat) {
            const Complex c = u[j][flat];
            if (c == Complex{0.0, 0.0}) continue;
            const ModeIndex m = g.mode_of(flat);
            os << m[0] << ' ' << m[1] << ' ' << m[2] << ' ' << c.real() << ' ' << c.imag() << '\n';
        }
    }
}

VectorField read_spectral_dump(std::istream& is) {
    int line_no = 0;
    auto next = [&](std::string& out) {
        while (std::getline(is, out)) {
            ++line_no;
            if (!out.empty() && out[0] != '#') return true;
        }
        return false;
    };

    std::string line;
    int dim = 0, n = 0;
    double box = 0.0;
    if (!next(line)) malformed(line_no, "missing grid line");
    {
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag >> dim >> n >> box) || tag != "grid") malformed(line_no, "expected 'grid <dim> <n> <L>'");
    }
    SpectralGrid grid(dim, n, box);
    int count = 0, flag = 0;
    if (!next(line)) malformed(line_no, "missing components line");
    {
        std::istringstream ss(line);
        std::string tag, tag2;
        if (!(ss >> tag >> count >> tag2 >> flag) || tag != "components" || tag2 != "divergence_free") {
            malformed(line_no, "expected 'components <c> divergence_free <0|1>'");
        }
        if (count != dim) malformed(line_no, "component count must equal dimension");
    }
    std::vector<ScalarField> comps(static_cast<std::size_t>(count), ScalarField(grid));
    int current = -1;
    while (next(line)) {
        std::istringstream ss(line);
        if (line.rfind("component", 0) == 0) {
            std::string tag;
            if (!(ss >> tag >> current) || current < 0 || current >= count) {
                malformed(line_no, "bad component header");
            }
            continue;
        }
        if (current < 0) malformed(line_no, "coefficient before component header");
        ModeIndex m{0, 0, 0};
        double re = 0.0, im = 0.0;
        if (!(ss >> m[0] >> m[1] >> m[2] >> re >> im)) malformed(line_no, "expected '<m1> <m2> <m3> <re> <im>'");
        try {
            comps[static_cast<std::size_t>(current)][grid.flat_index(m)] = Complex(re, im);
        } catch (const ValidationError& e) {
            malformed(line_no, e.what());
        }
    }
    return VectorField(std::move(comps), flag != 0);
}

void save_spectral_dump(const std::string& path, const VectorField& u) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open " + path + " for writing");
    write_spectral_dump(os, u);
    if (!os) throw IoError("write failed for " + path);
}

VectorField load_spectral_dump(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open " + path);
    return read_spectral_dump(is);
}

}  // namespace mildflow
