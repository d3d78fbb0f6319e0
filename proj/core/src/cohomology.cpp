#include "rigidity/cohomology.hpp"

#include "rigidity/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace rigidity {

// ---- words and presentations ----------------------------------------------

Word::Word(std::vector<Letter> letters) {
    for (const Letter& l : letters) {
        if (l.power != 1 && l.power != -1) throw DomainError("letters carry power +1 or -1");
        if (l.generator < 0) throw DomainError("negative generator index");
        if (!letters_.empty() && letters_.back().generator == l.generator && letters_.back().power == -l.power)
            letters_.pop_back();
        else
            letters_.push_back(l);
    }
}

Word Word::parse(std::string_view text) {
    std::vector<Letter> letters;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c >= 'a' && c <= 'z')
            letters.push_back({c - 'a', 1});
        else if (c >= 'A' && c <= 'Z')
            letters.push_back({c - 'A', -1});
        else
            throw DomainError(std::string("unexpected character in word: '") + c + "'");
    }
    return Word(std::move(letters));
}

Word Word::generator(int g, int power) {
    std::vector<Letter> letters;
    for (int i = 0; i < std::abs(power); ++i) letters.push_back({g, power > 0 ? 1 : -1});
    return Word(std::move(letters));
}

Word Word::inverse() const {
    std::vector<Letter> out(letters_.rbegin(), letters_.rend());
    for (Letter& l : out) l.power = -l.power;
    return Word(std::move(out));
}

Word Word::reversed() const { return Word(std::vector<Letter>(letters_.rbegin(), letters_.rend())); }

Word Word::pow(int k) const {
    Word base = k >= 0 ? *this : inverse();
    Word out;
    for (int i = 0; i < std::abs(k); ++i) out = out * base;
    return out;
}

int Word::exponent_sum(int generator) const {
    int s = 0;
    for (const Letter& l : letters_)
        if (l.generator == generator) s += l.power;
    return s;
}

int Word::max_generator() const {
    int m = -1;
    for (const Letter& l : letters_) m = std::max(m, l.generator);
    return m;
}

Word Word::operator*(const Word& o) const {
    std::vector<Letter> all = letters_;
    all.insert(all.end(), o.letters_.begin(), o.letters_.end());
    return Word(std::move(all));
}

std::string Word::to_string() const {
    std::string s;
    for (const Letter& l : letters_) s += static_cast<char>((l.power > 0 ? 'a' : 'A') + l.generator);
    return s;
}

void Presentation::validate() const {
    if (generator_count <= 0) throw DomainError("presentation needs at least one generator");
    for (const Word& r : relators) {
        if (r.empty()) throw DomainError("relators must be nonempty words");
        if (r.max_generator() >= generator_count) throw DomainError("relator uses an undeclared generator");
    }
}

Presentation Presentation::torus() { return free_abelian(2); }

Presentation Presentation::free_abelian(int k) {
    Presentation p;
    p.generator_count = k;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            p.relators.push_back(Word::generator(i) * Word::generator(j) * Word::generator(i, -1) *
                                 Word::generator(j, -1));
    return p;
}

// ---- modules ----------------------------------------------------------------

const char* to_string(ModuleTag t) {
    switch (t) {
        case ModuleTag::so31: return "so31";
        case ModuleTag::r31: return "r31";
        case ModuleTag::so41: return "so41";
    }
    return "?";
}

int module_dim(ModuleTag t) {
    switch (t) {
        case ModuleTag::so31: return 6;
        case ModuleTag::r31: return 4;
        case ModuleTag::so41: return 10;
    }
    return 0;
}

namespace {

Matrix adjoint_matrix(const Isometry& g) {
    const int n = g.n();
    const int m = algebra_dim(n);
    Matrix out(m, m);
    const Matrix gi = g.inverse().matrix();
    for (int k = 0; k < m; ++k) {
        Vector e = Vector::Zero(m);
        e[k] = 1.0;
        Matrix x = g.matrix() * from_algebra_coords(n, e).matrix() * gi;
        int idx = 0;
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) out(idx++, k) = x(i, j);
    }
    return out;
}

void require_n3(ModuleTag tag, const Isometry& g) {
    if (g.n() != 3) throw DimensionError(std::string("module ") + to_string(tag) + " needs SO_0(3,1) images");
}

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

Matrix module_action(ModuleTag tag, const Isometry& g) {
    switch (tag) {
        case ModuleTag::r31:
            require_n3(tag, g);
            return g.matrix();
        case ModuleTag::so31:
            require_n3(tag, g);
            return adjoint_matrix(g);
        case ModuleTag::so41:
            return adjoint_matrix(g.n() == 3 ? embed(g) : g);
    }
    return {};
}

Matrix module_element_matrix(ModuleTag tag, const Vector& v) {
    if (v.size() != module_dim(tag)) throw DimensionError("module element has the wrong size");
    switch (tag) {
        case ModuleTag::r31: return join(LieElement::zero(3), MinkVector(v)).matrix();
        case ModuleTag::so31: return from_algebra_coords(3, v).matrix();
        case ModuleTag::so41: return from_algebra_coords(4, v).matrix();
    }
    return {};
}

Matrix group_matrix(ModuleTag tag, const Isometry& g) {
    if (tag == ModuleTag::so31) return g.matrix();
    return g.n() == 3 ? embed(g).matrix() : g.matrix();
}

Isometry evaluate(const Word& w, const Representation& rep) {
    if (rep.empty()) throw DomainError("empty representation");
    Isometry out = Isometry::identity(rep.front().n());
    for (const Letter& l : w.letters()) {
        if (l.generator >= static_cast<int>(rep.size())) throw DomainError("letter outside the generator alphabet");
        out = out * (l.power > 0 ? rep[l.generator] : rep[l.generator].inverse());
    }
    return out;
}

double relator_residual(const Presentation& pres, const Representation& rep) {
    double worst = 0.0;
    for (const Word& r : pres.relators) {
        if (r.max_generator() >= static_cast<int>(rep.size()))
            throw DomainError("letter outside the generator alphabet");
        Matrix p = Matrix::Identity(rep.front().n() + 1, rep.front().n() + 1);
        double size = 1.0;
        for (const Letter& l : r.letters()) {
            p = p * (l.power > 0 ? rep[l.generator] : rep[l.generator].inverse()).matrix();
            size = std::max(size, max_abs(p));
        }
        worst = std::max(worst, max_abs(p - Matrix::Identity(p.rows(), p.cols())) / size);
    }
    return worst;
}

Matrix fox_matrix(const Word& r, int generator, const Representation& rep, ModuleTag tag) {
    if (generator < 0 || generator >= static_cast<int>(rep.size()) || r.max_generator() >= static_cast<int>(rep.size()))
        throw DomainError("letter outside the generator alphabet");
    const int m = module_dim(tag);
    Matrix f = Matrix::Zero(m, m);
    Matrix prefix = Matrix::Identity(m, m);
    const Matrix act = module_action(tag, rep[generator]);
    const Matrix inv = module_action(tag, rep[generator].inverse());
    for (const Letter& l : r.letters()) {
        if (l.generator == generator) {
            if (l.power > 0)
                f += prefix;
            else
                f -= prefix * inv;
        }
        prefix = prefix * (l.generator == generator ? (l.power > 0 ? act : inv)
                                                    : module_action(tag, l.power > 0 ? rep[l.generator]
                                                                                     : rep[l.generator].inverse()));
    }
    return f;
}

// ---- cocycles -----------------------------------------------------------------

std::shared_ptr<const CocycleContext> CocycleContext::make(Presentation pres, Representation rep, ModuleTag tag) {
    pres.validate();
    if (static_cast<int>(rep.size()) != pres.generator_count)
        throw DomainError("representation must assign an isometry to every generator");
    for (const Isometry& g : rep) {
        if (g.n() != rep.front().n()) throw DimensionError("representation mixes dimensions");
        if (tag != ModuleTag::so41) require_n3(tag, g);
    }
    if (!pres.relators.empty()) {
        double res = relator_residual(pres, rep);
        if (res > 1e-9)
            throw DomainError("representation violates the relators (residual " + std::to_string(res) + ")");
    }
    auto ctx = std::make_shared<CocycleContext>();
    ctx->presentation = std::move(pres);
    ctx->representation = std::move(rep);
    ctx->tag = tag;
    for (const Isometry& g : ctx->representation) {
        ctx->actions.push_back(module_action(tag, g));
        ctx->inverse_actions.push_back(module_action(tag, g.inverse()));
    }
    return ctx;
}

Matrix CocycleContext::action(const Word& w) const {
    Matrix p = Matrix::Identity(dim(), dim());
    for (const Letter& l : w.letters()) {
        if (l.generator >= generator_count()) throw DomainError("letter outside the generator alphabet");
        p = p * (l.power > 0 ? actions[l.generator] : inverse_actions[l.generator]);
    }
    return p;
}

Matrix CocycleContext::fox_system() const {
    const int m = dim();
    const int k = generator_count();
    Matrix f(m * static_cast<int>(presentation.relators.size()), m * k);
    for (std::size_t r = 0; r < presentation.relators.size(); ++r)
        for (int g = 0; g < k; ++g)
            f.block(m * static_cast<int>(r), m * g, m, m) =
                fox_matrix(presentation.relators[r], g, representation, tag);
    return f;
}

Matrix CocycleContext::coboundary_map() const {
    const int m = dim();
    Matrix b(m * generator_count(), m);
    for (int g = 0; g < generator_count(); ++g) b.block(m * g, 0, m, m) = Matrix::Identity(m, m) - actions[g];
    return b;
}

Cocycle::Cocycle(std::shared_ptr<const CocycleContext> context, std::vector<Vector> values, double tol)
    : context_(std::move(context)), values_(std::move(values)) {
    if (!context_) throw DomainError("cocycle without context");
    if (static_cast<int>(values_.size()) != context_->generator_count())
        throw DimensionError("cocycle needs one value per generator");
    for (const Vector& v : values_)
        if (v.size() != context_->dim()) throw DimensionError("cocycle value has the wrong size");
    double res = relation_residual();
    if (res > tol) throw DomainError("values violate the cocycle relation (residual " + std::to_string(res) + ")");
}

Cocycle Cocycle::from_flat(std::shared_ptr<const CocycleContext> context, const Vector& flat, double tol) {
    const int m = context->dim();
    if (flat.size() != m * context->generator_count()) throw DimensionError("flat cocycle has the wrong size");
    std::vector<Vector> values;
    for (int g = 0; g < context->generator_count(); ++g) values.push_back(flat.segment(m * g, m));
    return Cocycle(std::move(context), std::move(values), tol);
}

Vector Cocycle::flat() const {
    const int m = context_->dim();
    Vector out(m * static_cast<int>(values_.size()));
    for (std::size_t g = 0; g < values_.size(); ++g) out.segment(m * static_cast<int>(g), m) = values_[g];
    return out;
}

Vector Cocycle::value_on(const Word& w) const {
    const int m = context_->dim();
    Vector v = Vector::Zero(m);
    Matrix prefix = Matrix::Identity(m, m);
    for (const Letter& l : w.letters()) {
        if (l.generator >= context_->generator_count()) throw DomainError("letter outside the generator alphabet");
        if (l.power > 0) {
            v += prefix * values_[l.generator];
            prefix = prefix * context_->actions[l.generator];
        } else {
            v -= prefix * (context_->inverse_actions[l.generator] * values_[l.generator]);
            prefix = prefix * context_->inverse_actions[l.generator];
        }
    }
    return v;
}

double Cocycle::relation_residual() const {
    if (context_->presentation.relators.empty()) return 0.0;
    const Matrix f = context_->fox_system();
    const Vector x = flat();
    const double denom = max_abs(f) * x.cwiseAbs().maxCoeff();
    if (denom == 0.0) return 0.0;
    return (f * x).cwiseAbs().maxCoeff() / denom;
}

Cocycle Cocycle::operator+(const Cocycle& o) const {
    if (o.context_ != context_) throw DomainError("cocycles over different contexts");
    std::vector<Vector> v = values_;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.values_[i];
    return Cocycle(context_, std::move(v));
}

Cocycle Cocycle::operator*(double s) const {
    std::vector<Vector> v = values_;
    for (Vector& x : v) x *= s;
    return Cocycle(context_, std::move(v));
}

Cocycle coboundary(std::shared_ptr<const CocycleContext> context, const Vector& a) {
    if (a.size() != context->dim()) throw DimensionError("coboundary vector has the wrong size");
    std::vector<Vector> values;
    for (int g = 0; g < context->generator_count(); ++g) values.push_back(a - context->actions[g] * a);
    return Cocycle(std::move(context), std::move(values));
}

// ---- cohomology -----------------------------------------------------------

CohomologyReport cocycle_space(const Presentation& pres, const Representation& rep, ModuleTag tag, double tol) {
    return cocycle_space(CocycleContext::make(pres, rep, tag), tol);
}

CohomologyReport cocycle_space(std::shared_ptr<const CocycleContext> ctx, double tol) {
    CohomologyReport rep;
    rep.tolerance = tol;
    const int flat = ctx->dim() * ctx->generator_count();
    if (ctx->presentation.relators.empty()) {
        rep.z1 = Matrix::Identity(flat, flat);
    } else {
        Subspaces z = subspaces(ctx->fox_system(), tol, "Fox system");
        rep.z1 = z.kernel;
        rep.singular_values = z.info.singular_values;
    }
    Subspaces b = subspaces(ctx->coboundary_map(), tol, "coboundary map");
    rep.b1 = b.image;
    rep.dim_z1 = static_cast<int>(rep.z1.cols());
    rep.dim_b1 = static_cast<int>(rep.b1.cols());
    rep.dim_h1 = rep.dim_z1 - rep.dim_b1;
    if (rep.dim_h1 < 0)
        throw Error("coboundaries exceed cocycles: dim Z1 = " + std::to_string(rep.dim_z1) +
                    ", dim B1 = " + std::to_string(rep.dim_b1));
    for (int k = 0; k < rep.dim_z1; ++k) rep.basis_z1.push_back(Cocycle::from_flat(ctx, rep.z1.col(k)));
    return rep;
}

std::vector<Cocycle> CohomologyReport::h1_representatives() const {
    std::vector<Cocycle> out;
    if (dim_h1 == 0 || basis_z1.empty()) return out;
    Matrix m = z1 - b1 * (b1.transpose() * z1);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
    for (int k = 0; k < dim_h1; ++k) {
        Vector v = svd.matrixU().col(k);
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            if (std::abs(v[i]) > 1e-9) {
                if (v[i] < 0) v = -v;
                break;
            }
        }
        out.push_back(Cocycle::from_flat(basis_z1.front().context_ptr(), v));
    }
    return out;
}

double relative_distance_to_coboundaries(const Cocycle& d) {
    const Vector x = d.flat();
    const double n = x.norm();
    if (n == 0.0) return 0.0;
    Matrix b = orthonormal_columns(d.context().coboundary_map(), kRankTol, "coboundary map");
    return distance_to_span(x, b) / n;
}

bool is_coboundary(const Cocycle& d, double tol) { return relative_distance_to_coboundaries(d) <= tol; }

Cocycle restrict(const Cocycle& d, const std::vector<Word>& subgroup_words, double tol) {
    if (subgroup_words.empty()) throw DomainError("restrict needs at least one word");
    const Representation& rep = d.context().representation;
    Representation images;
    for (const Word& w : subgroup_words) images.push_back(evaluate(w, rep));
    for (std::size_t i = 0; i < images.size(); ++i) {
        for (std::size_t j = i + 1; j < images.size(); ++j) {
            const Matrix ab = images[i].matrix() * images[j].matrix();
            const Matrix ba = images[j].matrix() * images[i].matrix();
            const double scale = std::max(1.0, max_abs(ab));
            if (max_abs(ab - ba) > tol * scale) throw DomainError("subgroup images do not commute");
        }
    }
    auto ctx = CocycleContext::make(Presentation::free_abelian(static_cast<int>(subgroup_words.size())),
                                    std::move(images), d.tag());
    std::vector<Vector> values;
    for (const Word& w : subgroup_words) values.push_back(d.value_on(w));
    return Cocycle(std::move(ctx), std::move(values));
}

RestrictionReport peripheral_restriction(const Presentation& pres, const Representation& rep,
                                         const std::vector<Word>& peripheral_words, ModuleTag tag, double tol) {
    auto ctx = CocycleContext::make(pres, rep, tag);
    CohomologyReport whole = cocycle_space(ctx, tol);

    Representation images;
    for (const Word& w : peripheral_words) images.push_back(evaluate(w, rep));
    auto bctx = CocycleContext::make(Presentation::free_abelian(static_cast<int>(peripheral_words.size())),
                                     images, tag);
    CohomologyReport boundary = cocycle_space(bctx, tol);

    RestrictionReport out;
    out.dim_h1 = whole.dim_h1;
    out.dim_h1_boundary = boundary.dim_h1;

    Matrix combined(boundary.b1.rows(), whole.dim_z1 + boundary.dim_b1);
    for (int k = 0; k < whole.dim_z1; ++k) {
        Vector r = restrict(whole.basis_z1[k], peripheral_words).flat();
        double n = r.norm();
        combined.col(k) = n > 0.0 ? Vector(r / n) : r;
    }
    combined.rightCols(boundary.dim_b1) = boundary.b1;
    int rank = numerical_rank(combined, tol, "restricted cocycles").rank;
    out.dim_image = rank - boundary.dim_b1;
    out.dim_parabolic = out.dim_h1 - out.dim_image;
    return out;
}

int parabolic_h1(const Presentation& pres, const Representation& rep, const std::vector<Word>& peripheral_words,
                 ModuleTag tag, double tol) {
    return peripheral_restriction(pres, rep, peripheral_words, tag, tol).dim_parabolic;
}

// ---- torus normal form --------------------------------------------------------

std::pair<Eigen::Vector2d, Eigen::Vector2d> torus_lattice(const CocycleContext& context) {
    if (context.generator_count() != 2) throw DomainError("torus data needs exactly two generators");
    Eigen::Vector2d t[2];
    for (int j = 0; j < 2; ++j) {
        const Isometry& g = context.representation[j];
        BoundaryAction act = boundary_affine_action(g.n() == 3 ? embed(g) : g);
        if (std::abs(act.scale - 1.0) > 1e-8 || (act.linear_part - Matrix3::Identity()).cwiseAbs().maxCoeff() > 1e-8 ||
            std::abs(act.translation[2]) > 1e-8 * std::max(1.0, act.translation.norm()))
            throw DomainError("torus generators must act as horizontal translations fixing p0");
        t[j] = act.translation.head(2);
    }
    return {t[0], t[1]};
}

std::shared_ptr<const CocycleContext> torus_context(const Eigen::Vector2d& t1, const Eigen::Vector2d& t2,
                                                    ModuleTag tag) {
    return CocycleContext::make(Presentation::torus(),
                                {parabolic_translation(t1.x(), t1.y()), parabolic_translation(t2.x(), t2.y())}, tag);
}

Vector normalization_vector(const CoboundaryParams& c) {
    Vector a(4);
    a << -c.l, c.l, c.b, -c.a;
    return a;
}

std::vector<Vector> normal_form_values(const Eigen::Vector2d& t1, const Eigen::Vector2d& t2,
                                       const Eigen::Vector2d& omega, double lambda) {
    const Eigen::Vector2d iomega(-omega.y(), omega.x());
    std::vector<Vector> out;
    for (const Eigen::Vector2d& phi : {t1, t2}) {
        const Eigen::Vector2d r = phi.dot(iomega) * lambda * omega;
        Vector v(4);
        v << 0.0, 0.0, -r.y(), r.x();
        out.push_back(v);
    }
    return out;
}

TorusNormalForm torus_normal_form(const Cocycle& d) {
    if (d.tag() != ModuleTag::r31) throw DomainError("torus_normal_form works on R^{3,1}-valued cocycles");
    const auto [t1, t2] = torus_lattice(d.context());
    const double det = t1.x() * t2.y() - t1.y() * t2.x();
    if (std::abs(det) <= 1e-12 * std::max(1.0, t1.norm() * t2.norm()))
        throw DomainError("degenerate lattice");

    const Complex phi[2] = {{t1.x(), t1.y()}, {t2.x(), t2.y()}};
    Complex p[2];
    double z[2];
    for (int j = 0; j < 2; ++j) {
        R31Coordinates c = r31_coords(MinkVector(d.value(j)));
        p[j] = {c.alpha, c.beta};
        z[j] = c.z;
    }

    // Adding the L-type coboundary with c = 2L shifts alpha + i beta by -i c phi.
    const Complex e = std::conj(phi[0]) * p[1] - std::conj(phi[1]) * p[0];
    const double c_l = -e.real() / (2.0 * det);
    for (int j = 0; j < 2; ++j) p[j] += Complex(0.0, -c_l) * phi[j];

    const Complex w = (p[0] * phi[0] + p[1] * phi[1]) / (std::norm(phi[0]) + std::norm(phi[1]));
    double scale = 0.0;
    for (int j = 0; j < 2; ++j) scale = std::max(scale, d.value(j).cwiseAbs().maxCoeff());

    TorusNormalForm out;
    double c_total = c_l;
    if (std::abs(w) * std::max(std::abs(phi[0]), std::abs(phi[1])) > 1e-10 * std::max(scale, 1e-300)) {
        out.lambda = 2.0 * std::abs(w);
        const Complex omega = std::sqrt(Complex(0.0, -1.0) * w / std::abs(w));
        out.omega = {omega.real(), omega.imag()};
        if (std::abs(out.omega.x()) > 1e-12 ? out.omega.x() < 0.0 : out.omega.y() < 0.0) out.omega = -out.omega;
        c_total += 0.5 * out.lambda;
    }

    CoboundaryParams cb;
    cb.l = 0.5 * c_total;
    // z_j + L |phi_j|^2 - B x_j + A y_j = 0
    Eigen::Matrix2d sys;
    sys << t1.y(), -t1.x(), t2.y(), -t2.x();
    const Eigen::Vector2d rhs(-(z[0] + cb.l * t1.squaredNorm()), -(z[1] + cb.l * t2.squaredNorm()));
    const Eigen::Vector2d ab = sys.partialPivLu().solve(rhs);
    cb.a = ab.x();
    cb.b = ab.y();
    out.coboundary_correction = cb;

    const Vector a = normalization_vector(cb);
    for (int j = 0; j < 2; ++j) out.normalized.push_back(d.value(j) + a - d.context().actions[j] * a);
    return out;
}

// ---- deformations ---------------------------------------------------------------

double weil_deform(const Cocycle& d, double t) {
    const CocycleContext& ctx = d.context();
    std::vector<Matrix> gen, inv;
    for (int g = 0; g < ctx.generator_count(); ++g) {
        const Matrix r = group_matrix(ctx.tag, ctx.representation[g]);
        const Matrix m = (Matrix::Identity(r.rows(), r.cols()) + t * module_element_matrix(ctx.tag, d.value(g))) * r;
        gen.push_back(m);
        inv.push_back(m.inverse());
    }
    double worst = 0.0;
    for (const Word& r : ctx.presentation.relators) {
        Matrix p = Matrix::Identity(gen.front().rows(), gen.front().cols());
        for (const Letter& l : r.letters()) p = p * (l.power > 0 ? gen[l.generator] : inv[l.generator]);
        worst = std::max(worst, max_abs(p - Matrix::Identity(p.rows(), p.cols())));
    }
    return worst;
}

double trace_gradient(const Cocycle& d, const Word& gamma) {
    const Matrix dm = module_element_matrix(d.tag(), d.value_on(gamma));
    const Matrix g = group_matrix(d.tag(), evaluate(gamma, d.context().representation));
    return (dm * g).trace();
}

}  // namespace rigidity
