#include "stabcat/algebra.hpp"
#include "stabcat/poly.hpp"

#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace stabcat {

namespace {

std::string vec_str(const Vec& v)
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

std::vector<Matrix> rights_from_lefts(const std::vector<Matrix>& left, std::size_t n, Scalar p)
{
    // R_i(:, j) = e_j e_i = L_j(:, i)
    std::vector<Matrix> right(n, Matrix(n, n, p));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                right[i](k, j) = left[j](k, i);
    return right;
}

Vec to_vec(const std::vector<long long>& v, Scalar p)
{
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = gf::reduce(v[i], p);
    return r;
}

// Returns (tr(M^(p^i)) mod p^(i+1)) / p^i mod p for the integer lift of M.
Scalar extended_trace(const Matrix& m, Scalar p, int i)
{
    std::uint64_t modulus = p;
    for (int t = 0; t < i; ++t)
        modulus *= p;
    const std::size_t n = m.rows();
    std::vector<std::uint64_t> a(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            a[r * n + c] = m(r, c);
    auto mulmod = [&](const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y) {
        std::vector<std::uint64_t> z(n * n, 0);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t k = 0; k < n; ++k) {
                std::uint64_t xv = x[r * n + k];
                if (!xv)
                    continue;
                for (std::size_t c = 0; c < n; ++c)
                    z[r * n + c] = (z[r * n + c] + xv * y[k * n + c]) % modulus;
            }
        return z;
    };
    // raise to the p-th power i times
    for (int t = 0; t < i; ++t) {
        std::vector<std::uint64_t> base = a, acc;
        for (Scalar e = 0; e < p; ++e)
            acc = acc.empty() ? base : mulmod(acc, base);
        a = std::move(acc);
    }
    std::uint64_t tr = 0;
    for (std::size_t r = 0; r < n; ++r)
        tr = (tr + a[r * n + r]) % modulus;
    const std::uint64_t scale = modulus / p;
    if (tr % scale != 0)
        throw Error("extended trace not divisible by p^i (internal inconsistency)");
    return static_cast<Scalar>((tr / scale) % p);
}

struct AlgebraCache {
    std::mutex mu;
    std::map<const Algebra*, std::pair<AlgebraPtr, AlgebraPtr>> opposites;
    std::map<std::pair<const Algebra*, const Algebra*>, std::array<AlgebraPtr, 3>> tensors;
    std::map<Scalar, AlgebraPtr> fields;
};

AlgebraCache& cache()
{
    static AlgebraCache c;
    return c;
}

} // namespace

AlgebraPtr Algebra::make(std::string name, Scalar p, std::vector<std::string> labels, Vec unit,
                         std::vector<Matrix> left, Vec sform)
{
    std::shared_ptr<Algebra> a(new Algebra());
    a->name_ = std::move(name);
    a->p_ = p;
    a->dim_ = left.size();
    a->labels_ = std::move(labels);
    if (a->labels_.size() != a->dim_) {
        a->labels_.clear();
        for (std::size_t i = 0; i < a->dim_; ++i)
            a->labels_.push_back("e" + std::to_string(i));
    }
    a->unit_ = std::move(unit);
    a->sform_ = std::move(sform);
    a->right_ = rights_from_lefts(left, a->dim_, p);
    a->left_ = std::move(left);
    return a;
}

Matrix Algebra::left_of(const Vec& a) const
{
    Matrix m(dim_, dim_, p_);
    for (std::size_t i = 0; i < dim_; ++i)
        m.axpy(a[i], left_[i]);
    return m;
}

Matrix Algebra::right_of(const Vec& a) const
{
    Matrix m(dim_, dim_, p_);
    for (std::size_t i = 0; i < dim_; ++i)
        m.axpy(a[i], right_[i]);
    return m;
}

Vec Algebra::multiply(const Vec& a, const Vec& b) const { return left_of(a) * b; }

Vec Algebra::basis_vector(std::size_t i) const
{
    Vec v(dim_, 0);
    v[i] = 1;
    return v;
}

Matrix Algebra::gram() const
{
    Matrix g(dim_, dim_, p_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            g(i, j) = dot(sform_, left_[i].col(j), p_);
    return g;
}

const Matrix& Algebra::gram_inverse() const
{
    std::call_once(gram_once_, [this] {
        auto inv = inverse(gram());
        if (!inv)
            throw FormDegenerate("Gram matrix of " + name_ + " is singular");
        gram_inv_ = *inv;
    });
    return gram_inv_;
}

bool Algebra::same_as(const Algebra& o) const
{
    if (this == &o)
        return true;
    if (p_ != o.p_ || dim_ != o.dim_ || unit_ != o.unit_)
        return false;
    for (std::size_t i = 0; i < dim_; ++i)
        if (left_[i] != o.left_[i])
            return false;
    return true;
}

AlgebraDef Algebra::definition() const
{
    AlgebraDef d;
    d.name = name_;
    d.p = p_;
    d.dim = dim_;
    d.basis = labels_;
    d.unit.assign(unit_.begin(), unit_.end());
    d.sform.assign(sform_.begin(), sform_.end());
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            for (std::size_t k = 0; k < dim_; ++k)
                if (left_[i](k, j))
                    d.mul.push_back({i, j, k, static_cast<long long>(left_[i](k, j))});
    if (supplied_radical_) {
        std::vector<std::vector<long long>> r;
        for (std::size_t i = 0; i < supplied_radical_->dim(); ++i) {
            Vec v = supplied_radical_->vector(i);
            r.emplace_back(v.begin(), v.end());
        }
        d.radical = r;
    }
    return d;
}

AlgebraPtr validate_algebra(const AlgebraDef& def)
{
    const Scalar p = def.p;
    const std::size_t n = def.dim;
    if (!gf::is_prime(p))
        throw InvalidDefinition("characteristic " + std::to_string(p) + " is not prime");
    if (n == 0)
        throw InvalidDefinition("dimension must be positive");
    if (def.unit.size() != n || def.sform.size() != n)
        throw InvalidDefinition("unit and sform must have " + std::to_string(n) + " entries");
    if (!def.basis.empty() && def.basis.size() != n)
        throw InvalidDefinition("basis label count differs from dim");
    std::vector<Matrix> left(n, Matrix(n, n, p));
    for (const auto& t : def.mul) {
        if (t.i >= n || t.j >= n || t.k >= n)
            throw InvalidDefinition("structure constant index out of range: [" + std::to_string(t.i) + "," +
                                    std::to_string(t.j) + "," + std::to_string(t.k) + "]");
        left[t.i](t.k, t.j) = gf::add(left[t.i](t.k, t.j), gf::reduce(t.c, p), p);
    }
    Vec unit = to_vec(def.unit, p), sform = to_vec(def.sform, p);
    std::shared_ptr<Algebra> a(new Algebra());
    a->name_ = def.name;
    a->p_ = p;
    a->dim_ = n;
    a->labels_ = def.basis;
    if (a->labels_.empty())
        for (std::size_t i = 0; i < n; ++i)
            a->labels_.push_back("e" + std::to_string(i));
    a->unit_ = unit;
    a->sform_ = sform;
    a->right_ = rights_from_lefts(left, n, p);
    a->left_ = std::move(left);

    // associativity: (e_i e_j) e_l = e_i (e_j e_l), i.e. L_{e_i e_j} = L_i L_j
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Matrix lhs = a->left_of(a->left_[i].col(j));
            Matrix rhs = a->left_[i] * a->left_[j];
            if (lhs != rhs) {
                for (std::size_t l = 0; l < n; ++l)
                    if (lhs.col(l) != rhs.col(l))
                        throw NonAssociative("(e" + std::to_string(i) + "*e" + std::to_string(j) + ")*e" +
                                             std::to_string(l) + " != e" + std::to_string(i) + "*(e" +
                                             std::to_string(j) + "*e" + std::to_string(l) + ")");
            }
        }
    const Matrix id = Matrix::identity(n, p);
    Matrix lu = a->left_of(unit), ru = a->right_of(unit);
    for (std::size_t j = 0; j < n; ++j) {
        if (lu.col(j) != id.col(j))
            throw BadUnit("1*e" + std::to_string(j) + " = " + vec_str(lu.col(j)) + " for unit " + vec_str(unit));
        if (ru.col(j) != id.col(j))
            throw BadUnit("e" + std::to_string(j) + "*1 = " + vec_str(ru.col(j)) + " for unit " + vec_str(unit));
    }
    Matrix g = a->gram();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (g(i, j) != g(j, i))
                throw FormNotSymmetric("s(e" + std::to_string(i) + "*e" + std::to_string(j) + ") = " +
                                       std::to_string(g(i, j)) + " but s(e" + std::to_string(j) + "*e" +
                                       std::to_string(i) + ") = " + std::to_string(g(j, i)));
    auto ker = kernel_basis(g);
    if (ker.dim() > 0)
        throw FormDegenerate("Gram matrix " + g.str() + " is singular; null vector " + vec_str(ker.vector(0)));
    if (def.radical) {
        std::vector<Vec> rows;
        for (const auto& r : *def.radical) {
            if (r.size() != n)
                throw InvalidDefinition("radical vector length differs from dim");
            rows.push_back(to_vec(r, p));
        }
        Subspace r = Subspace::span(rows, n, p);
        verify_radical(*a, r);
        a->supplied_radical_ = r;
    }
    return a;
}

Subspace compute_radical(const Algebra& a)
{
    const std::size_t n = a.dim();
    const Scalar p = a.prime();
    Subspace ideal = Subspace::full(n, p);
    std::uint64_t pi = 1;
    for (int i = 0; pi <= n && ideal.dim() > 0; ++i, pi *= p) {
        const std::size_t r = ideal.dim();
        Matrix sys(n, r, p);
        for (std::size_t j = 0; j < r; ++j) {
            Vec v = ideal.vector(j);
            Matrix rv = a.left_of(v);
            for (std::size_t k = 0; k < n; ++k)
                sys(k, j) = extended_trace(a.left_of(rv.col(k)), p, i); // column k is v * e_k
        }
        Subspace coeffs = kernel_basis(sys);
        std::vector<Vec> next;
        Matrix basis_cols = ideal.basis_columns();
        for (std::size_t t = 0; t < coeffs.dim(); ++t)
            next.push_back(basis_cols * coeffs.vector(t));
        ideal = Subspace::span(next, n, p);
    }
    return ideal;
}

AlgebraPtr quotient_algebra(const Algebra& a, const Subspace& ideal)
{
    const Scalar p = a.prime();
    QuotientSpace q = quotient(a.dim(), ideal);
    std::vector<Matrix> left;
    for (std::size_t t = 0; t < q.dim(); ++t)
        left.push_back(q.projection * a.left(q.free_coords[t]) * q.section);
    return Algebra::make(a.name() + "/I", p, {}, q.project(a.unit()), std::move(left), Vec(q.dim(), 0));
}

void verify_radical(const Algebra& a, const Subspace& r)
{
    const std::size_t n = a.dim();
    const Scalar p = a.prime();
    for (std::size_t t = 0; t < r.dim(); ++t) {
        Vec v = r.vector(t);
        for (std::size_t i = 0; i < n; ++i) {
            if (!r.contains(a.left(i) * v))
                throw BadRadical("e" + std::to_string(i) + " * " + vec_str(v) + " leaves the supplied radical");
            if (!r.contains(a.right(i) * v))
                throw BadRadical(vec_str(v) + " * e" + std::to_string(i) + " leaves the supplied radical");
        }
    }
    // nilpotency: successive powers R^k = R^(k-1) * R shrink to zero
    Subspace power = r;
    for (std::size_t k = 0; power.dim() > 0; ++k) {
        if (k > n)
            throw BadRadical("supplied radical is not nilpotent");
        std::vector<Vec> prods;
        for (std::size_t s = 0; s < power.dim(); ++s) {
            Matrix ls = a.left_of(power.vector(s));
            for (std::size_t t = 0; t < r.dim(); ++t)
                prods.push_back(ls * r.vector(t));
        }
        Subspace next = Subspace::span(prods, n, p);
        if (next.dim() == power.dim())
            throw BadRadical("supplied radical is not nilpotent");
        power = next;
    }
    if (r.dim() < n) {
        AlgebraPtr quo = quotient_algebra(a, r);
        if (compute_radical(*quo).dim() != 0)
            throw BadRadical("quotient by the supplied radical is not semisimple");
    }
}

const Subspace& Algebra::radical() const
{
    std::call_once(rad_once_, [this] {
        radical_ = supplied_radical_ ? *supplied_radical_ : compute_radical(*this);
    });
    return *radical_;
}

namespace {

// Minimal polynomial of c in the unital subalgebra with identity e, optionally modulo a subspace.
poly::Poly min_poly(const Algebra& a, const Vec& e, const Vec& c, const Subspace* modulo)
{
    const Scalar p = a.prime();
    const std::size_t n = a.dim();
    Matrix lc = a.left_of(c);
    std::vector<Vec> powers;
    Vec next = e;
    for (;;) {
        // is the next power dependent on the earlier ones (plus the modulus)?
        std::vector<Vec> cols = powers;
        if (modulo)
            for (std::size_t t = 0; t < modulo->dim(); ++t)
                cols.push_back(modulo->vector(t));
        std::optional<Vec> sol;
        if (cols.empty())
            sol = is_zero(next) ? std::optional<Vec>(Vec{}) : std::nullopt;
        else
            sol = solve(Matrix::from_columns(cols, n, p), next);
        if (sol) {
            const std::size_t k = powers.size();
            poly::Poly f(k + 1, 0);
            for (std::size_t j = 0; j < k; ++j)
                f[j] = gf::neg((*sol)[j], p);
            f[k] = 1;
            return f;
        }
        powers.push_back(next);
        next = lc * next;
    }
}

Vec eval_poly(const Algebra& a, const poly::Poly& f, const Vec& e, const Vec& c)
{
    const Scalar p = a.prime();
    Matrix lc = a.left_of(c);
    Vec acc(a.dim(), 0), pw = e;
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (f[j])
            acc = vec_add(acc, vec_scale(pw, f[j], p), p);
        pw = lc * pw;
    }
    return acc;
}

void split_idempotent(const Algebra& a, const Vec& e, std::mt19937_64& rng, std::vector<Vec>& out, int depth)
{
    const Scalar p = a.prime();
    const std::size_t n = a.dim();
    if (depth > static_cast<int>(n))
        throw Error("idempotent splitting recursed too deeply");
    Matrix le = a.left_of(e), re = a.right_of(e);
    Matrix sandwich = le * re;
    Subspace corner = Subspace::column_space(sandwich);
    const Subspace& rad = a.radical();
    std::vector<Vec> rad_corner;
    for (std::size_t t = 0; t < rad.dim(); ++t)
        rad_corner.push_back(sandwich * rad.vector(t));
    Subspace corner_rad = Subspace::span(rad_corner, n, p);
    const std::size_t reduced = corner.dim() - corner_rad.dim();
    if (reduced == 1) {
        out.push_back(e);
        return;
    }
    std::uniform_int_distribution<Scalar> coef(0, p - 1);
    Matrix corner_cols = corner.basis_columns();
    for (int attempt = 0; attempt < 200; ++attempt) {
        Vec x(corner.dim());
        for (auto& v : x)
            v = coef(rng);
        Vec c = corner_cols * x;
        poly::Poly f = min_poly(a, e, c, nullptr);
        auto split = poly::coprime_split(f, p, rng);
        if (split) {
            // u = 1 mod first, 0 mod second
            auto bz = poly::ext_gcd(split->second, split->first, p);
            poly::Poly u = poly::mod(poly::mul(bz.s, split->second, p), f, p);
            Vec u1 = eval_poly(a, u, e, c);
            Vec u2 = vec_sub(e, u1, p);
            split_idempotent(a, u1, rng, out, depth + 1);
            split_idempotent(a, u2, rng, out, depth + 1);
            return;
        }
        poly::Poly fr = min_poly(a, e, c, &corner_rad);
        if (poly::degree(fr) == static_cast<int>(reduced) && poly::is_irreducible(fr, p)) {
            // the reduced corner is a field generated by c
            out.push_back(e);
            return;
        }
    }
    throw Error("failed to decide primitivity of an idempotent after bounded attempts");
}

} // namespace

const std::vector<Vec>& Algebra::primitive_idempotents() const
{
    std::call_once(idem_once_, [this] {
        std::mt19937_64 rng(0x5eed);
        std::vector<Vec> out;
        split_idempotent(*this, unit_, rng, out, 0);
        idempotents_ = std::move(out);
    });
    return idempotents_;
}

const std::vector<Vec>& Algebra::generators() const
{
    std::call_once(gen_once_, [this] {
        std::vector<Vec> gens;
        auto closure = [&]() {
            std::vector<Vec> span{unit_};
            Subspace s = Subspace::span(span, dim_, p_);
            for (;;) {
                std::vector<Vec> more;
                for (std::size_t t = 0; t < s.dim(); ++t)
                    for (const auto& g : gens)
                        more.push_back(multiply(s.vector(t), g));
                Subspace next = s;
                for (const auto& v : more)
                    if (!next.contains(v))
                        next = next.sum(Subspace::span({v}, dim_, p_));
                if (next.dim() == s.dim())
                    return s;
                s = next;
            }
        };
        Subspace sub = closure();
        for (std::size_t i = 0; i < dim_ && sub.dim() < dim_; ++i) {
            Vec b = basis_vector(i);
            if (sub.contains(b))
                continue;
            gens.push_back(b);
            sub = closure();
        }
        generators_ = std::move(gens);
    });
    return generators_;
}

AlgebraPtr opposite(const AlgebraPtr& a)
{
    auto& c = cache();
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.opposites.find(a.get());
    if (it != c.opposites.end())
        return it->second.second;
    std::vector<Matrix> left;
    for (std::size_t i = 0; i < a->dim(); ++i)
        left.push_back(a->right(i));
    AlgebraPtr op = Algebra::make(a->name() + "^op", a->prime(), a->basis_labels(), a->unit(), std::move(left),
                                  a->sform());
    c.opposites[a.get()] = {a, op};
    c.opposites[op.get()] = {op, a};
    return op;
}

AlgebraPtr tensor(const AlgebraPtr& a, const AlgebraPtr& b)
{
    if (a->prime() != b->prime())
        throw CharMismatch("tensor of algebras over GF(" + std::to_string(a->prime()) + ") and GF(" +
                           std::to_string(b->prime()) + ")");
    auto& c = cache();
    {
        std::lock_guard<std::mutex> lock(c.mu);
        auto it = c.tensors.find({a.get(), b.get()});
        if (it != c.tensors.end())
            return it->second[2];
    }
    const Scalar p = a->prime();
    std::vector<Matrix> left;
    std::vector<std::string> labels;
    Vec unit, sform;
    for (std::size_t i = 0; i < a->dim(); ++i)
        for (std::size_t j = 0; j < b->dim(); ++j) {
            left.push_back(kron(a->left(i), b->left(j)));
            labels.push_back(a->basis_labels()[i] + "|" + b->basis_labels()[j]);
            unit.push_back(gf::mul(a->unit()[i], b->unit()[j], p));
            sform.push_back(gf::mul(a->sform()[i], b->sform()[j], p));
        }
    AlgebraPtr t = Algebra::make(a->name() + "(x)" + b->name(), p, std::move(labels), std::move(unit),
                                 std::move(left), std::move(sform));
    std::lock_guard<std::mutex> lock(c.mu);
    auto [it, inserted] = c.tensors.emplace(std::make_pair(a.get(), b.get()), std::array<AlgebraPtr, 3>{a, b, t});
    return it->second[2];
}

AlgebraPtr enveloping(const AlgebraPtr& a) { return tensor(a, opposite(a)); }

AlgebraPtr ground_field(Scalar p)
{
    if (!gf::is_prime(p))
        throw InvalidDefinition("characteristic " + std::to_string(p) + " is not prime");
    auto& c = cache();
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.fields.find(p);
    if (it != c.fields.end())
        return it->second;
    AlgebraDef d;
    d.name = "GF(" + std::to_string(p) + ")";
    d.p = p;
    d.dim = 1;
    d.basis = {"1"};
    d.unit = {1};
    d.sform = {1};
    d.mul = {{0, 0, 0, 1}};
    AlgebraPtr f = validate_algebra(d);
    c.fields[p] = f;
    return f;
}

std::vector<std::vector<std::size_t>> cyclic_table(std::size_t n)
{
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            t[i][j] = (i + j) % n;
    return t;
}

std::vector<std::vector<std::size_t>> s3_table()
{
    // permutations of {0,1,2} in lexicographic order; identity first
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> q{0, 1, 2};
    do
        perms.push_back(q);
    while (std::next_permutation(q.begin(), q.end()));
    std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            std::array<int, 3> comp{};
            for (int x = 0; x < 3; ++x)
                comp[static_cast<std::size_t>(x)] = perms[i][static_cast<std::size_t>(perms[j][static_cast<std::size_t>(x)])];
            t[i][j] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), comp) - perms.begin());
        }
    return t;
}

AlgebraPtr group_algebra(Scalar p, const std::vector<std::vector<std::size_t>>& table, const std::string& name)
{
    const std::size_t n = table.size();
    if (n == 0)
        throw NotAGroup("empty multiplication table");
    for (const auto& row : table) {
        if (row.size() != n)
            throw NotAGroup("multiplication table is not square");
        for (auto x : row)
            if (x >= n)
                throw NotAGroup("product index " + std::to_string(x) + " out of range");
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw NotAGroup("(g" + std::to_string(a) + "g" + std::to_string(b) + ")g" + std::to_string(c) +
                                    " != g" + std::to_string(a) + "(g" + std::to_string(b) + "g" +
                                    std::to_string(c) + ")");
    std::optional<std::size_t> id;
    for (std::size_t e = 0; e < n && !id; ++e) {
        bool ok = true;
        for (std::size_t g = 0; g < n && ok; ++g)
            ok = table[e][g] == g && table[g][e] == g;
        if (ok)
            id = e;
    }
    if (!id)
        throw NotAGroup("no identity element");
    for (std::size_t g = 0; g < n; ++g) {
        bool has_inv = false;
        for (std::size_t h = 0; h < n && !has_inv; ++h)
            has_inv = table[g][h] == *id && table[h][g] == *id;
        if (!has_inv)
            throw NotAGroup("g" + std::to_string(g) + " has no inverse");
    }
    AlgebraDef d;
    d.name = name;
    d.p = p;
    d.dim = n;
    for (std::size_t g = 0; g < n; ++g)
        d.basis.push_back(g == *id ? "1" : "g" + std::to_string(g));
    d.unit.assign(n, 0);
    d.unit[*id] = 1;
    d.sform.assign(n, 0);
    d.sform[*id] = 1;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            d.mul.push_back({a, b, table[a][b], 1});
    return validate_algebra(d);
}

AlgebraPtr truncated_poly(Scalar p, std::size_t n)
{
    if (n == 0)
        throw InvalidDefinition("truncated polynomial algebra needs N >= 1");
    AlgebraDef d;
    d.name = "GF(" + std::to_string(p) + ")[x]/(x^" + std::to_string(n) + ")";
    d.p = p;
    d.dim = n;
    for (std::size_t i = 0; i < n; ++i)
        d.basis.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)));
    d.unit.assign(n, 0);
    d.unit[0] = 1;
    d.sform.assign(n, 0);
    d.sform[n - 1] = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; i + j < n; ++j)
            d.mul.push_back({i, j, i + j, 1});
    return validate_algebra(d);
}

AlgebraMap make_algebra_map(AlgebraPtr source, AlgebraPtr target, Matrix m)
{
    if (m.rows() != target->dim() || m.cols() != source->dim() || m.prime() != source->prime())
        throw InvalidDefinition("algebra map has the wrong shape");
    if (m * source->unit() != target->unit())
        throw InvalidDefinition("algebra map does not preserve the unit");
    for (std::size_t i = 0; i < source->dim(); ++i)
        for (std::size_t j = 0; j < source->dim(); ++j) {
            Vec lhs = m * source->left(i).col(j);
            Vec rhs = target->multiply(m.col(i), m.col(j));
            if (lhs != rhs)
                throw InvalidDefinition("algebra map is not multiplicative on (e" + std::to_string(i) + ", e" +
                                        std::to_string(j) + ")");
        }
    return AlgebraMap{std::move(source), std::move(target), std::move(m)};
}

AlgebraDef algebra_def_from_json(const nlohmann::json& j)
{
    try {
        AlgebraDef d;
        d.name = j.value("name", std::string("algebra"));
        d.p = j.at("char").get<Scalar>();
        d.dim = j.at("dim").get<std::size_t>();
        if (j.contains("basis"))
            d.basis = j.at("basis").get<std::vector<std::string>>();
        d.unit = j.at("unit").get<std::vector<long long>>();
        d.sform = j.at("sform").get<std::vector<long long>>();
        for (const auto& t : j.at("mul")) {
            if (!t.is_array() || t.size() != 4)
                throw InvalidDefinition("mul entries must be [i, j, k, c]");
            d.mul.push_back({t[0].get<std::size_t>(), t[1].get<std::size_t>(), t[2].get<std::size_t>(),
                             t[3].get<long long>()});
        }
        if (j.contains("radical"))
            d.radical = j.at("radical").get<std::vector<std::vector<long long>>>();
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidDefinition(std::string("malformed algebra definition: ") + e.what());
    }
}

nlohmann::json algebra_to_json(const Algebra& a)
{
    AlgebraDef d = a.definition();
    nlohmann::json j;
    j["name"] = d.name;
    j["char"] = d.p;
    j["dim"] = d.dim;
    j["basis"] = d.basis;
    j["unit"] = d.unit;
    j["sform"] = d.sform;
    nlohmann::json mul = nlohmann::json::array();
    for (const auto& t : d.mul)
        mul.push_back({t.i, t.j, t.k, t.c});
    j["mul"] = mul;
    if (d.radical)
        j["radical"] = *d.radical;
    return j;
}

AlgebraPtr load_algebra(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidDefinition("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidDefinition("invalid JSON in " + path + ": " + e.what());
    }
    return validate_algebra(algebra_def_from_json(j));
}

} // namespace stabcat
