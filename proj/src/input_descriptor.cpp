#include "dgf/input_descriptor.hpp"

#include <charconv>
#include <cmath>

#include "dgf/cats.hpp"

namespace dgf::cli {

namespace {

struct Cursor {
    const std::string& text;
    size_t pos = 0;

    bool done() const { return pos >= text.size(); }

    void expect(char c, const char* what) {
        if (done() || text[pos] != c)
            throw ParseError("expected '" + std::string(1, c) + "' in input descriptor", pos, what);
        ++pos;
    }

    double number(const char* what) {
        double value = 0.0;
        const char* begin = text.data() + pos;
        const char* end = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{})
            throw ParseError("expected a number in input descriptor", pos, what);
        pos = static_cast<size_t>(ptr - text.data());
        return value;
    }

    int integer(const char* what) {
        int value = 0;
        const char* begin = text.data() + pos;
        const char* end = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{})
            throw ParseError("expected an integer in input descriptor", pos, what);
        pos = static_cast<size_t>(ptr - text.data());
        return value;
    }

    void finish() {
        if (!done())
            throw ParseError("trailing characters in input descriptor", pos, "end of input");
    }
};

}  // namespace

InputDescriptor parse_input_descriptor(const std::string& text) {
    InputDescriptor d;
    d.text = text;

    const size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw ParseError("missing ':' in input descriptor", text.size(),
                         "fock:<k> | coherent:<re>,<im> | coherent:n=<mean> | "
                         "dfock:<re>,<im>,<k> | cat:<re>,<im>[,<k>]");
    const std::string head = text.substr(0, colon);
    Cursor cur{text, colon + 1};

    if (head == "fock") {
        d.kind = InputKind::fock;
        d.fock_index = cur.integer("fock index k");
        cur.finish();
        if (d.fock_index < 0)
            throw ParseError("fock index must be >= 0", colon + 1, "k >= 0");
        return d;
    }
    if (head == "coherent") {
        d.kind = InputKind::coherent;
        if (!cur.done() && text[cur.pos] == 'n') {
            ++cur.pos;
            cur.expect('=', "'=' after n");
            const double mean = cur.number("mean photon number");
            cur.finish();
            if (mean < 0.0)
                throw ParseError("mean photon number must be >= 0", colon + 1, "n >= 0");
            d.amplitude = std::sqrt(mean);
            return d;
        }
        const double re = cur.number("Re(beta)");
        cur.expect(',', "',' between Re and Im");
        const double im = cur.number("Im(beta)");
        cur.finish();
        d.amplitude = Complex(re, im);
        return d;
    }
    if (head == "dfock") {
        d.kind = InputKind::displaced_fock;
        const double re = cur.number("Re(beta)");
        cur.expect(',', "',' between Re and Im");
        const double im = cur.number("Im(beta)");
        cur.expect(',', "',' before k");
        d.fock_index = cur.integer("fock index k");
        cur.finish();
        if (d.fock_index < 0)
            throw ParseError("fock index must be >= 0", colon + 1, "k >= 0");
        d.amplitude = Complex(re, im);
        return d;
    }
    if (head == "cat") {
        d.kind = InputKind::cat;
        const double re = cur.number("Re(alpha)");
        cur.expect(',', "',' between Re and Im");
        const double im = cur.number("Im(alpha)");
        if (!cur.done() && text[cur.pos] == ',') {
            ++cur.pos;
            d.fock_index = cur.integer("fock index k");
        }
        cur.finish();
        if (d.fock_index < 0)
            throw ParseError("fock index must be >= 0", colon + 1, "k >= 0");
        d.amplitude = Complex(re, im);
        return d;
    }
    throw ParseError("unknown input kind '" + head + "'", 0,
                     "one of fock, coherent, dfock, cat");
}

StateVector InputDescriptor::build(int dim) const {
    switch (kind) {
        case InputKind::fock:
            if (fock_index >= dim)
                throw TruncationError("fock launch index exceeds basis", fock_index + 1);
            return basis_state(dim, fock_index);
        case InputKind::coherent:
            return cats::coherent_state(amplitude, dim);
        case InputKind::displaced_fock:
            return cats::displaced_fock(amplitude, fock_index, dim);
        case InputKind::cat:
            return cats::cat_from_fock(amplitude, fock_index, dim).state;
    }
    throw std::logic_error("InputDescriptor::build: bad kind");
}

double InputDescriptor::displacement_abs() const {
    return (kind == InputKind::fock) ? 0.0 : std::abs(amplitude);
}

int InputDescriptor::min_sites(double extra, double tail_tol) const {
    return std::max(fock_index + 1,
                    cats::min_safe_dim(displacement_abs() + extra, fock_index, tail_tol));
}

}  // namespace dgf::cli
