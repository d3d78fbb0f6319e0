#include "rigidity/twobridge.hpp"

#include "rigidity/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

namespace rigidity {

namespace {

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

int mod_inverse(int q, int p) {
    for (int x = 1; x < p; ++x)
        if ((static_cast<long long>(q) * x) % p == 1) return x;
    return 0;
}

// 2x2 matrices over Z[u].
using Poly = std::vector<long long>;

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly c(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    return c;
}

struct PolyMat {
    Poly e[2][2];
};

PolyMat mul(const PolyMat& x, const PolyMat& y) {
    PolyMat z;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) z.e[i][j] = poly_add(poly_mul(x.e[i][0], y.e[0][j]), poly_mul(x.e[i][1], y.e[1][j]));
    return z;
}

PolyMat letter_matrix(const Letter& l) {
    PolyMat m;
    m.e[0][0] = {1};
    m.e[1][1] = {1};
    m.e[0][1] = {0};
    m.e[1][0] = {0};
    if (l.generator == 0)
        m.e[0][1] = {l.power};
    else
        m.e[1][0] = {0, -l.power};
    return m;
}

// `growth`, if given, receives the largest entry among the partial products.
Matrix2c sl2_word(const Word& w, const Mobius& a, const Mobius& b, double* growth = nullptr) {
    const Matrix2c ai = a.inverse().matrix();
    const Matrix2c bi = b.inverse().matrix();
    Matrix2c m = Matrix2c::Identity();
    double peak = 1.0;
    for (const Letter& l : w.letters()) {
        if (l.generator == 0)
            m = m * (l.power > 0 ? a.matrix() : ai);
        else
            m = m * (l.power > 0 ? b.matrix() : bi);
        peak = std::max(peak, m.cwiseAbs().maxCoeff());
    }
    if (growth) *growth = peak;
    return m;
}

double max_abs(const Matrix2c& m) { return m.cwiseAbs().maxCoeff(); }

bool root_less(const Complex& x, const Complex& y) {
    double tol = 1e-9 * std::max({1.0, std::abs(x), std::abs(y)});
    if (std::abs(x.real() - y.real()) > tol) return x.real() < y.real();
    return x.imag() < y.imag();
}

}  // namespace

// ---- knots -------------------------------------------------------------------

TwoBridgeKnot::TwoBridgeKnot(int p, int q) : p_(p), q_(q) {
    if (p < 3 || p % 2 == 0) throw DomainError("two-bridge knots need odd p >= 3");
    if (q <= 0 || q >= p) throw DomainError("two-bridge knots need 0 < q < p");
    if (std::gcd(p, q) != 1) throw DomainError("two-bridge knots need gcd(p, q) = 1");
}

TwoBridgeKnot TwoBridgeKnot::parse(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) throw DomainError("knot must look like p/q");
    auto num = [&](std::string_view s) {
        s = trim(s);
        int v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
            throw DomainError("knot must look like p/q");
        return v;
    };
    return TwoBridgeKnot(num(text.substr(0, slash)), num(text.substr(slash + 1)));
}

TwoBridgeKnot TwoBridgeKnot::canonical() const { return TwoBridgeKnot(p_, std::min(q_, mod_inverse(q_, p_))); }

std::string TwoBridgeKnot::to_string() const { return std::to_string(p_) + "/" + std::to_string(q_); }

bool TwoBridgeKnot::operator==(const TwoBridgeKnot& o) const {
    auto a = canonical();
    auto b = o.canonical();
    return a.p_ == b.p_ && a.q_ == b.q_;
}

Word two_bridge_word(const TwoBridgeKnot& k) {
    const long long p = k.p();
    const long long q = (k.q() % 2 == 1) ? k.q() : k.q() - p;
    std::vector<Letter> letters;
    for (long long i = 1; i < p; ++i) {
        int sign = (floor_div(i * q, p) % 2 == 0) ? 1 : -1;
        letters.push_back({i % 2 == 1 ? 0 : 1, sign});
    }
    return Word(std::move(letters));
}

Presentation presentation(const TwoBridgeKnot& k) {
    const Word w = two_bridge_word(k);
    Presentation pres;
    pres.generator_count = 2;
    pres.relators.push_back(w * Word::generator(0) * w.inverse() * Word::generator(1, -1));
    return pres;
}

Word longitude_word(const TwoBridgeKnot& k) {
    const Word w = two_bridge_word(k);
    const int e = w.exponent_sum(0) + w.exponent_sum(1);
    return w.reversed() * w * Word::generator(0, -2 * e);
}

// ---- Riley representations ------------------------------------------------------

Complex IntPolynomial::operator()(Complex z) const {
    Complex v = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * z + static_cast<double>(*it);
    return v;
}

Complex IntPolynomial::derivative(Complex z) const {
    Complex v = 0.0;
    for (int i = degree(); i >= 1; --i) v = v * z + static_cast<double>(i) * static_cast<double>(coeffs[i]);
    return v;
}

IntPolynomial riley_polynomial(const TwoBridgeKnot& k) {
    PolyMat m;
    m.e[0][0] = {1};
    m.e[1][1] = {1};
    m.e[0][1] = {0};
    m.e[1][0] = {0};
    const Word w = two_bridge_word(k);
    for (const Letter& l : w.letters()) m = mul(m, letter_matrix(l));
    IntPolynomial out{m.e[0][0]};
    while (out.coeffs.size() > 1 && out.coeffs.back() == 0) out.coeffs.pop_back();
    return out;
}

Mobius riley_a() {
    Matrix2c m;
    m << 1, 1, 0, 1;
    return Mobius::from_matrix(m);
}

Mobius riley_b(Complex u) {
    Matrix2c m;
    m << 1, 0, -u, 1;
    return Mobius::from_matrix(m);
}

Complex translation_of(const Mobius& g, double tol) {
    const Matrix2c& m = g.matrix();
    const double scale = std::max(1.0, max_abs(m));
    if (std::abs(m(1, 0)) > tol * scale || std::abs(m(0, 0) - m(1, 1)) > tol * scale ||
        std::abs(std::abs(m(0, 0)) - 1.0) > tol * scale)
        throw DomainError("element is not parabolic fixing infinity");
    return m(0, 1) / m(0, 0);
}

std::vector<RileyRep> riley_reps(const TwoBridgeKnot& k) {
    const IntPolynomial poly = riley_polynomial(k);
    const int d = poly.degree();
    std::vector<Complex> roots;
    if (d >= 1) {
        Matrix c = Matrix::Zero(d, d);
        const double lead = static_cast<double>(poly.coeffs[d]);
        for (int i = 1; i < d; ++i) c(i, i - 1) = 1.0;
        for (int i = 0; i < d; ++i) c(i, d - 1) = -static_cast<double>(poly.coeffs[i]) / lead;
        Eigen::EigenSolver<Matrix> es(c, false);
        for (int i = 0; i < d; ++i) roots.push_back(es.eigenvalues()[i]);
    }
    for (Complex& z : roots) {
        for (int it = 0; it < 60; ++it) {
            const Complex dp = poly.derivative(z);
            if (dp == Complex(0.0)) break;
            const Complex step = poly(z) / dp;
            z -= step;
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
        }
    }
    const Word w = two_bridge_word(k);
    // The monomial form loses accuracy to cancellation for long words; finish
    // on the (0,0) entry of the word itself, which the polynomial equals.
    for (Complex& z : roots) {
        double best = std::abs(sl2_word(w, riley_a(), riley_b(z))(0, 0));
        for (int it = 0; it < 8 && best > 0.0; ++it) {
            const Complex dp = poly.derivative(z);
            if (dp == Complex(0.0)) break;
            const Complex next = z - sl2_word(w, riley_a(), riley_b(z))(0, 0) / dp;
            const double value = std::abs(sl2_word(w, riley_a(), riley_b(next))(0, 0));
            if (!(value < best)) break;
            z = next;
            best = value;
        }
    }
    std::sort(roots.begin(), roots.end(), root_less);

    const Word wa = w * Word::generator(0);
    const Word ell = longitude_word(k);
    std::vector<RileyRep> out;
    for (const Complex& u : roots) {
        RileyRep r;
        r.root = u;
        r.a = riley_a();
        r.b = riley_b(u);
        double growth = 1.0;
        const Matrix2c lhs = sl2_word(wa, r.a, r.b, &growth);
        const Matrix2c rhs = r.b.matrix() * sl2_word(w, r.a, r.b);
        r.relator_residual = max_abs(lhs - rhs) / (growth * std::max(1.0, max_abs(r.b.matrix())));
        double magnitude = 0.0;
        for (int i = 0; i <= d; ++i)
            magnitude += std::abs(static_cast<double>(poly.coeffs[i])) * std::pow(std::abs(u), i);
        r.polynomial_residual = std::abs(poly(u)) / std::max(1.0, magnitude);
        if (r.relator_residual > 1e-9) {
            std::ostringstream msg;
            msg << "Riley root " << u << " of " << k.to_string() << " did not converge: relator residual "
                << r.relator_residual << ", polynomial residual " << r.polynomial_residual;
            throw PipelineError(msg.str());
        }
        const Matrix2c l = sl2_word(ell, r.a, r.b);
        const Matrix2c comm = l * r.a.matrix() - r.a.matrix() * l;
        if (max_abs(comm) > 1e-9 * std::max(1.0, max_abs(l)))
            throw Error("longitude does not commute with the meridian for " + k.to_string());
        try {
            r.x_longitude = translation_of(Mobius::from_matrix(l, 1e-8));
            r.is_geometric_candidate = std::abs(r.x_longitude.imag()) > 1e-8 * std::max(1.0, std::abs(r.x_longitude));
        } catch (const DomainError&) {
            r.is_geometric_candidate = false;
        }
        out.push_back(r);
    }
    return out;
}

namespace {

// Real part of the longitude translation once Im > 0.
double oriented_shape_real(const RileyRep& r) {
    return r.x_longitude.imag() < 0.0 ? -r.x_longitude.real() : r.x_longitude.real();
}

// Conjugate roots give mirror cusp shapes; keep Re >= 0, then Im(root) > 0.
bool prefer_among_conjugates(const RileyRep& r, const RileyRep& best) {
    const double ri = oriented_shape_real(r), rb = oriented_shape_real(best);
    const double scale = 1e-9 * std::max(1.0, std::abs(r.x_longitude));
    if (std::abs(ri - rb) > scale) return ri > rb;
    return r.root.imag() > 0.0 && best.root.imag() <= 0.0;
}

}  // namespace

std::optional<int> select_geometric(const std::vector<RileyRep>& reps) {
    std::optional<int> best;
    for (int i = 0; i < static_cast<int>(reps.size()); ++i) {
        if (!reps[i].is_geometric_candidate) continue;
        if (!best) {
            best = i;
            continue;
        }
        const double mi = std::abs(reps[i].x_longitude.imag());
        const double mb = std::abs(reps[*best].x_longitude.imag());
        if (std::abs(mi - mb) > 1e-9 * std::max(mi, mb)) {
            if (mi > mb) best = i;
        } else if (prefer_among_conjugates(reps[i], reps[*best])) {
            best = i;
        }
    }
    return best;
}

PeripheralLattice cusp_lattice(const RileyRep& rep, const TwoBridgeKnot& k) {
    if (!rep.is_geometric_candidate) throw DomainError("degenerate cusp lattice for " + k.to_string());
    PeripheralLattice lat;
    lat.meridian = Word::generator(0);
    lat.longitude = longitude_word(k);
    lat.x_meridian = translation_of(rep.a);
    Complex x = translation_of(Mobius::from_matrix(sl2_word(lat.longitude, rep.a, rep.b), 1e-8));
    if (x.imag() < 0.0) {
        lat.longitude = lat.longitude.inverse();
        x = -x;
    }
    lat.x_longitude = x;
    lat.t1 = {lat.x_meridian.real(), lat.x_meridian.imag()};
    lat.t2 = {x.real(), x.imag()};
    return lat;
}

Representation so31_representation(const RileyRep& rep) { return {from_sl2c(rep.a), from_sl2c(rep.b)}; }

// ---- slope --------------------------------------------------------------------

Slope Slope::from_ratio(double numerator, double denominator, double tol) {
    const double scale = std::max(std::abs(numerator), std::abs(denominator));
    if (scale == 0.0 || !std::isfinite(scale)) throw PipelineError("slope is 0/0");
    Slope s;
    s.numerator = numerator / scale;
    s.denominator = denominator / scale;
    if (std::abs(s.denominator) <= tol) {
        s.infinite = true;
    } else {
        s.value = numerator / denominator;
    }
    return s;
}

namespace {

std::string describe(const CohomologyReport& r, const char* what) {
    std::ostringstream out;
    out << what << ": dim Z1 = " << r.dim_z1 << ", dim B1 = " << r.dim_b1 << ", dim H1 = " << r.dim_h1
        << ", tolerance " << r.tolerance << ", relative singular values";
    for (double s : r.singular_values) out << ' ' << s;
    return out.str();
}

bool first_quadrant(const Eigen::Vector2d& w) { return w.x() > 1e-12 && w.y() >= -1e-12; }

}  // namespace

SlopeResult limit_slope(const TwoBridgeKnot& k, const SlopeOptions& options) {
    const std::vector<RileyRep> reps = riley_reps(k);
    SlopeResult out;
    if (options.root_index) {
        if (*options.root_index < 0 || *options.root_index >= static_cast<int>(reps.size()))
            throw DomainError("root index out of range for " + k.to_string());
        out.root_index = *options.root_index;
    } else {
        auto best = select_geometric(reps);
        if (!best) {
            std::ostringstream roots;
            roots << "Riley roots:";
            for (const auto& r : reps) roots << ' ' << r.root;
            throw PipelineError("no geometric candidate for " + k.to_string(), roots.str());
        }
        out.root_index = *best;
    }
    const RileyRep& rep = reps[out.root_index];
    out.root = rep.root;
    if (!rep.is_geometric_candidate)
        throw PipelineError("selected root is not a geometric candidate (degenerate cusp lattice)");
    out.lattice = cusp_lattice(rep, k);

    const Presentation pres = presentation(k);
    const Representation rho = so31_representation(rep);
    auto ctx = CocycleContext::make(pres, rho, ModuleTag::r31);
    const CohomologyReport whole = cocycle_space(ctx, options.tol);
    out.h1_dims.z1_r31_m = whole.dim_z1;
    out.h1_dims.b1_r31_m = whole.dim_b1;
    out.h1_dims.h1_r31_m = whole.dim_h1;
    if (whole.dim_h1 != 1)
        throw PipelineError("dim H1(M; R31) = " + std::to_string(whole.dim_h1) + ", expected 1",
                            describe(whole, "H1(M; R31)"));
    const Cocycle gen = whole.h1_representatives().front();

    out.basis_first = options.basis ? options.basis->first : out.lattice.meridian;
    out.basis_second = options.basis ? options.basis->second : out.lattice.longitude;
    const Cocycle restricted = restrict(gen, {out.basis_first, out.basis_second});
    const CohomologyReport torus = cocycle_space(restricted.context_ptr(), options.tol);
    out.h1_dims.z1_r31_torus = torus.dim_z1;
    out.h1_dims.b1_r31_torus = torus.dim_b1;
    out.h1_dims.h1_r31_torus = torus.dim_h1;
    std::tie(out.phi_first, out.phi_second) = torus_lattice(restricted.context());

    out.h1_dims.h1_so31_m = cocycle_space(pres, rho, ModuleTag::so31, options.tol).dim_h1;
    const RestrictionReport so41 = peripheral_restriction(
        pres, rho, {out.lattice.meridian, out.lattice.longitude}, ModuleTag::so41, options.tol);
    out.h1_dims.h1_so41_m = so41.dim_h1;
    out.h1_dims.image_so41 = so41.dim_image;
    out.h1_dims.ph1_so41 = so41.dim_parabolic;

    const TorusNormalForm plus = torus_normal_form(restricted);
    const TorusNormalForm minus = torus_normal_form(restricted * -1.0);
    if (plus.lambda == 0.0 || minus.lambda == 0.0)
        throw PipelineError("restricted generator is a peripheral coboundary");
    const bool take_plus = first_quadrant(plus.omega) || !first_quadrant(minus.omega);
    const TorusNormalForm& nf = take_plus ? plus : minus;
    const TorusNormalForm& alt = take_plus ? minus : plus;
    out.omega = nf.omega;
    out.lambda = nf.lambda;
    out.l = Slope::from_ratio(-out.phi_second.dot(nf.omega), out.phi_first.dot(nf.omega));
    out.l_alt = Slope::from_ratio(-out.phi_second.dot(alt.omega), out.phi_first.dot(alt.omega));

    out.residuals.relator = rep.relator_residual;
    const Matrix2c l = sl2_word(out.lattice.longitude, rep.a, rep.b);
    out.residuals.commutator = max_abs(l * rep.a.matrix() - rep.a.matrix() * l);
    out.residuals.cocycle = gen.relation_residual();
    const auto expected = normal_form_values(out.phi_first, out.phi_second, nf.omega, nf.lambda);
    for (int j = 0; j < 2; ++j)
        out.residuals.normal_form =
            std::max(out.residuals.normal_form, (nf.normalized[j] - expected[j]).cwiseAbs().maxCoeff());
    out.residuals.generator_boundary_distance = relative_distance_to_coboundaries(restricted);
    return out;
}

bool filling_compatibility(double trans1, double trans2, long long p, long long q, double tol) {
    if (std::gcd(p, q) != 1) throw DomainError("filling slope must be coprime");
    return std::abs(static_cast<double>(p) * trans1 + static_cast<double>(q) * trans2) <= tol;
}

std::pair<Isometry, Isometry> screw_family(const PeripheralLattice& lattice, const Eigen::Vector2d& omega,
                                           double lambda, double t) {
    if (omega.norm() == 0.0) throw DomainError("screw axis direction must be nonzero");
    const Eigen::Vector2d w = omega.normalized();
    const Vector3 axis(w.x(), w.y(), 0.0);
    const Vector3 iaxis(-w.y(), w.x(), 0.0);
    const Vector3 ez(0.0, 0.0, 1.0);
    const double s = lambda * t;

    auto element = [&](const Eigen::Vector2d& phi) {
        const double a = phi.dot(Eigen::Vector2d(-w.y(), w.x()));
        const double b = phi.dot(w);
        double horizontal = a;
        double vertical = 0.0;
        if (s != 0.0) {
            horizontal = std::sin(a * s) / s;
            const double half = std::sin(0.5 * a * s);
            vertical = 2.0 * half * half / s;
        }
        const Matrix3 r = Eigen::AngleAxisd(-a * s, axis).toRotationMatrix();
        const Vector3 translation = horizontal * iaxis - vertical * ez + b * axis;
        return from_boundary_similarity(r, translation, 1.0);
    };
    return {element(lattice.t1), element(lattice.t2)};
}

}  // namespace rigidity
