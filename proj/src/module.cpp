#include "stabcat/module.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>

namespace stabcat {

namespace {

bool is_field(const AlgebraPtr& a) { return a->dim() == 1; }

// Columns `cols` of kron(f, g), where column c = a * cols(g) + b.
Matrix kron_columns(const Matrix& f, const Matrix& g, const std::vector<std::size_t>& cols)
{
    const Scalar p = f.prime();
    const std::size_t gr = g.rows(), gc = g.cols();
    Matrix out(f.rows() * gr, cols.size(), p);
    for (std::size_t t = 0; t < cols.size(); ++t) {
        const std::size_t a = cols[t] / gc, b = cols[t] % gc;
        for (std::size_t i = 0; i < f.rows(); ++i) {
            const Scalar fi = f(i, a);
            if (!fi)
                continue;
            for (std::size_t r = 0; r < gr; ++r) {
                const Scalar gv = g(r, b);
                if (gv)
                    out(i * gr + r, t) = gf::mul(fi, gv, p);
            }
        }
    }
    return out;
}

ModulePtr from_marginals(AlgebraPtr left, AlgebraPtr right, const std::vector<Matrix>& lefts,
                         const std::vector<Matrix>& rights, std::string name)
{
    std::vector<Matrix> action;
    if (is_field(right)) {
        action = lefts;
    } else if (is_field(left)) {
        action = rights;
    } else {
        action.reserve(lefts.size() * rights.size());
        for (const auto& l : lefts)
            for (const auto& r : rights)
                action.push_back(l * r);
    }
    return Module::make(std::move(left), std::move(right), std::move(action), std::move(name));
}

} // namespace

AlgebraPtr acting_algebra(const AlgebraPtr& left, const AlgebraPtr& right)
{
    if (left->prime() != right->prime())
        throw CharMismatch("left and right algebras have different characteristics");
    if (is_field(right))
        return left;
    if (is_field(left))
        return opposite(right);
    return tensor(left, opposite(right));
}

ModulePtr Module::make(AlgebraPtr left, AlgebraPtr right, std::vector<Matrix> action, std::string name)
{
    std::shared_ptr<Module> m(new Module());
    m->acting_ = acting_algebra(left, right);
    if (action.size() != m->acting_->dim())
        throw UsageError("module needs one action matrix per basis element of the acting algebra (" +
                         std::to_string(m->acting_->dim()) + "), got " + std::to_string(action.size()));
    m->dim_ = action.front().rows();
    for (const auto& a : action)
        if (a.rows() != m->dim_ || a.cols() != m->dim_ || a.prime() != m->acting_->prime())
            throw UsageError("module action matrices must all be square of the module dimension");
    m->left_ = std::move(left);
    m->right_ = std::move(right);
    m->name_ = std::move(name);
    m->action_ = std::move(action);
    const Scalar p = m->acting_->prime();
    const std::size_t da = m->left_->dim(), dc = m->right_->dim();
    if (is_field(m->right_)) {
        m->left_marg_ = m->action_;
        m->right_marg_ = {Matrix::identity(m->dim_, p)};
    } else if (is_field(m->left_)) {
        m->right_marg_ = m->action_;
        m->left_marg_ = {Matrix::identity(m->dim_, p)};
    } else {
        const Vec& ua = m->left_->unit();
        const Vec& uc = m->right_->unit();
        m->left_marg_.assign(da, Matrix(m->dim_, m->dim_, p));
        m->right_marg_.assign(dc, Matrix(m->dim_, m->dim_, p));
        for (std::size_t i = 0; i < da; ++i)
            for (std::size_t j = 0; j < dc; ++j) {
                const Matrix& x = m->action_[i * dc + j];
                m->left_marg_[i].axpy(uc[j], x);
                m->right_marg_[j].axpy(ua[i], x);
            }
    }
    return m;
}

ModulePtr Module::left_module(AlgebraPtr a, std::vector<Matrix> action, std::string name)
{
    AlgebraPtr k = ground_field(a->prime());
    return make(std::move(a), std::move(k), std::move(action), std::move(name));
}

Matrix Module::act(const Vec& x) const
{
    Matrix m(dim_, dim_, prime());
    for (std::size_t i = 0; i < x.size(); ++i)
        m.axpy(x[i], action_[i]);
    return m;
}

Matrix Module::left_action_of(const Vec& a) const
{
    Matrix m(dim_, dim_, prime());
    for (std::size_t i = 0; i < a.size(); ++i)
        m.axpy(a[i], left_marg_[i]);
    return m;
}

Matrix Module::right_action_of(const Vec& c) const
{
    Matrix m(dim_, dim_, prime());
    for (std::size_t i = 0; i < c.size(); ++i)
        m.axpy(c[i], right_marg_[i]);
    return m;
}

bool same_category(const Module& u, const Module& v)
{
    return same_algebra(u.left_algebra(), v.left_algebra()) && same_algebra(u.right_algebra(), v.right_algebra());
}

void require_same_category(const Module& u, const Module& v, const char* what)
{
    if (!same_category(u, v))
        throw UsageError(std::string(what) + ": modules live over different algebras");
}

void validate_module(const Module& m)
{
    const auto& a = *m.acting();
    const Scalar p = a.prime();
    if (m.act(a.unit()) != Matrix::identity(m.dim(), p))
        throw InvalidDefinition("module " + m.name() + ": the unit does not act as the identity");
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (m.action(i) * m.action(j) != m.act(a.left(i).col(j)))
                throw InvalidDefinition("module " + m.name() + ": action(e" + std::to_string(i) + ")*action(e" +
                                        std::to_string(j) + ") != action(e" + std::to_string(i) + "*e" +
                                        std::to_string(j) + ")");
}

bool is_homomorphism(const Module& u, const Module& v, const Matrix& f)
{
    if (!same_category(u, v) || f.rows() != v.dim() || f.cols() != u.dim())
        return false;
    for (const auto& g : u.acting()->generators())
        if (f * u.act(g) != v.act(g) * f)
            return false;
    return true;
}

ModulePtr zero_module(const AlgebraPtr& left, const AlgebraPtr& right)
{
    auto acting = acting_algebra(left, right);
    return Module::make(left, right, std::vector<Matrix>(acting->dim(), Matrix(0, 0, acting->prime())), "0");
}

ModulePtr regular_module(const AlgebraPtr& left, const AlgebraPtr& right)
{
    auto acting = acting_algebra(left, right);
    std::vector<Matrix> action;
    for (std::size_t i = 0; i < acting->dim(); ++i)
        action.push_back(acting->left(i));
    return Module::make(left, right, std::move(action), "regular " + acting->name());
}

ModulePtr regular_bimodule(const AlgebraPtr& a)
{
    std::vector<Matrix> lefts, rights;
    for (std::size_t i = 0; i < a->dim(); ++i) {
        lefts.push_back(a->left(i));
        rights.push_back(a->right(i));
    }
    return from_marginals(a, a, lefts, rights, a->name() + " as bimodule");
}

ModulePtr one_dimensional(const AlgebraPtr& left, const AlgebraPtr& right, const Vec& values)
{
    auto acting = acting_algebra(left, right);
    if (values.size() != acting->dim())
        throw UsageError("one_dimensional: need one value per basis element");
    std::vector<Matrix> action;
    for (auto v : values) {
        Matrix m(1, 1, acting->prime());
        m(0, 0) = v;
        action.push_back(m);
    }
    return Module::make(left, right, std::move(action), "one-dimensional");
}

ModulePtr direct_sum(const std::vector<ModulePtr>& parts)
{
    if (parts.empty())
        throw UsageError("direct_sum of nothing");
    for (const auto& m : parts)
        require_same_category(*parts.front(), *m, "direct_sum");
    const auto& acting = parts.front()->acting();
    std::vector<Matrix> action;
    for (std::size_t i = 0; i < acting->dim(); ++i) {
        std::vector<Matrix> blocks;
        for (const auto& m : parts)
            blocks.push_back(m->action(i));
        action.push_back(stabcat::direct_sum(blocks, acting->prime()));
    }
    return Module::make(parts.front()->left_algebra(), parts.front()->right_algebra(), std::move(action), "sum");
}

ModulePtr dual_module(const ModulePtr& m)
{
    const std::size_t da = m->left_algebra()->dim(), dc = m->right_algebra()->dim();
    std::vector<Matrix> action(da * dc);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < dc; ++j)
            action[j * da + i] = m->action(i * dc + j).transpose();
    return Module::make(m->right_algebra(), m->left_algebra(), std::move(action), "dual of " + m->name());
}

ModulePtr restrict_module(const ModulePtr& m, const AlgebraMap* left_map, const AlgebraMap* right_map)
{
    AlgebraPtr left = left_map ? left_map->source : m->left_algebra();
    AlgebraPtr right = right_map ? right_map->source : m->right_algebra();
    if (left_map && !same_algebra(left_map->target, m->left_algebra()))
        throw UsageError("restrict_module: left map lands in the wrong algebra");
    if (right_map && !same_algebra(right_map->target, m->right_algebra()))
        throw UsageError("restrict_module: right map lands in the wrong algebra");
    std::vector<Matrix> lefts, rights;
    for (std::size_t i = 0; i < left->dim(); ++i)
        lefts.push_back(left_map ? m->left_action_of(left_map->matrix.col(i)) : m->left_action(i));
    for (std::size_t j = 0; j < right->dim(); ++j)
        rights.push_back(right_map ? m->right_action_of(right_map->matrix.col(j)) : m->right_action(j));
    return from_marginals(left, right, lefts, rights, "restriction of " + m->name());
}

Submodule submodule(const ModulePtr& m, const Subspace& s)
{
    const auto& acting = *m->acting();
    Matrix incl = s.basis_columns();
    std::vector<Matrix> action;
    for (std::size_t i = 0; i < acting.dim(); ++i) {
        Matrix img = m->action(i) * incl;
        Matrix coords(s.dim(), s.dim(), m->prime());
        for (std::size_t c = 0; c < s.dim(); ++c) {
            Vec v = img.col(c);
            if (!s.contains(v))
                throw UsageError("submodule: subspace is not stable under the action");
            for (std::size_t r = 0; r < s.dim(); ++r)
                coords(r, c) = v[s.pivots()[r]];
        }
        action.push_back(std::move(coords));
    }
    return {Module::make(m->left_algebra(), m->right_algebra(), std::move(action), "submodule"), incl};
}

Subspace generated_submodule(const Module& m, const std::vector<Vec>& vecs)
{
    std::vector<Vec> span;
    for (const auto& v : vecs)
        for (const auto& a : m.actions())
            span.push_back(a * v);
    return Subspace::span(span, m.dim(), m.prime());
}

QuotientModule quotient_module(const ModulePtr& m, const Subspace& s)
{
    QuotientSpace q = quotient(m->dim(), s);
    std::vector<Matrix> action;
    for (const auto& a : m->actions())
        action.push_back(q.projection * a * q.section);
    return {Module::make(m->left_algebra(), m->right_algebra(), std::move(action), "quotient"), q.projection,
            q.section};
}

Vec TensorProduct::pure(const Vec& m, const Vec& n) const
{
    const Scalar p = module->prime();
    Vec t(m.size() * n.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i])
            for (std::size_t j = 0; j < n.size(); ++j)
                t[i * n.size() + j] = gf::mul(m[i], n[j], p);
    return projection * t;
}

TensorProduct tensor_over(const ModulePtr& m, const ModulePtr& n)
{
    if (!same_algebra(m->right_algebra(), n->left_algebra()))
        throw UsageError("tensor_over: inner algebras differ");
    const Scalar p = m->prime();
    const std::size_t dm = m->dim(), dn = n->dim(), total = dm * dn;
    const auto& inner = *m->right_algebra();
    const Matrix im = Matrix::identity(dm, p), in = Matrix::identity(dn, p);
    std::vector<Matrix> rel_blocks;
    for (const auto& b : inner.generators())
        rel_blocks.push_back(kron(m->right_action_of(b), in) - kron(im, n->left_action_of(b)));
    Subspace rel = rel_blocks.empty() ? Subspace(total, p)
                                      : Subspace::column_space(hstack(rel_blocks, total, p));
    QuotientSpace q = quotient(total, rel);
    std::vector<Matrix> lefts, rights;
    for (std::size_t i = 0; i < m->left_algebra()->dim(); ++i)
        lefts.push_back(q.projection * kron_columns(m->left_action(i), in, q.free_coords));
    for (std::size_t j = 0; j < n->right_algebra()->dim(); ++j)
        rights.push_back(q.projection * kron_columns(im, n->right_action(j), q.free_coords));
    TensorProduct t;
    t.left_factor = m;
    t.right_factor = n;
    t.module = from_marginals(m->left_algebra(), n->right_algebra(), lefts, rights,
                              "(" + m->name() + ")(x)(" + n->name() + ")");
    t.projection = std::move(q.projection);
    t.section = std::move(q.section);
    t.free_coords = std::move(q.free_coords);
    return t;
}

std::shared_ptr<const TensorProduct> tensor_shared(const ModulePtr& m, const ModulePtr& n)
{
    using Key = std::pair<const Module*, const Module*>;
    static std::mutex mu;
    static std::map<Key, std::shared_ptr<const TensorProduct>> cache;
    const Key key{m.get(), n.get()};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end())
            return it->second;
    }
    auto t = std::make_shared<const TensorProduct>(tensor_over(m, n));
    std::lock_guard<std::mutex> lock(mu);
    // the entry owns both factors, so the key pointers stay valid
    return cache.emplace(key, t).first->second;
}

Matrix tensor_maps(const TensorProduct& source, const TensorProduct& target, const Matrix& f, const Matrix& g)
{
    if (f.cols() != source.left_factor->dim() || g.cols() != source.right_factor->dim() ||
        f.rows() != target.left_factor->dim() || g.rows() != target.right_factor->dim())
        throw UsageError("tensor_maps: factor shapes do not match the tensor products");
    // the section consists of unit vectors, so kron(f, g) * section selects columns
    return target.projection * kron_columns(f, g, source.free_coords);
}

ModulePtr module_from_json(const nlohmann::json& j, const std::string& base_dir)
{
    try {
        auto resolve = [&](const std::string& rel) {
            std::filesystem::path path(rel);
            return path.is_absolute() ? path.string() : (std::filesystem::path(base_dir) / path).string();
        };
        // an algebra is either a path (relative to the module file) or an inline definition
        auto algebra = [&](const nlohmann::json& a) {
            if (a.is_string())
                return load_algebra(resolve(a.get<std::string>()));
            return validate_algebra(algebra_def_from_json(a));
        };
        AlgebraPtr left, right;
        if (j.contains("algebra")) {
            left = algebra(j.at("algebra"));
            right = ground_field(left->prime());
        } else {
            left = algebra(j.at("left_algebra"));
            right = algebra(j.at("right_algebra"));
        }
        const std::size_t dim = j.at("dim").get<std::size_t>();
        const Scalar p = left->prime();
        std::vector<Matrix> action;
        for (const auto& mat : j.at("action")) {
            auto rows = mat.get<std::vector<std::vector<long long>>>();
            Matrix m = rows.empty() ? Matrix(0, 0, p) : Matrix::from_rows(rows, p);
            if (m.rows() != dim || m.cols() != dim)
                throw InvalidDefinition("action matrix is not " + std::to_string(dim) + "x" + std::to_string(dim));
            action.push_back(std::move(m));
        }
        if (action.size() != acting_algebra(left, right)->dim())
            throw InvalidDefinition("expected one action matrix per basis element of the acting algebra");
        ModulePtr m = Module::make(left, right, std::move(action), j.value("name", std::string("module")));
        validate_module(*m);
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidDefinition(std::string("malformed module definition: ") + e.what());
    }
}

ModulePtr load_module(const std::string& path)
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
    return module_from_json(j, std::filesystem::path(path).parent_path().string());
}

nlohmann::json module_to_json(const Module& m)
{
    nlohmann::json j;
    j["name"] = m.name();
    j["left_algebra"] = algebra_to_json(*m.left_algebra());
    j["right_algebra"] = algebra_to_json(*m.right_algebra());
    j["dim"] = m.dim();
    nlohmann::json action = nlohmann::json::array();
    for (const auto& a : m.actions()) {
        std::vector<std::vector<Scalar>> rows;
        for (std::size_t r = 0; r < a.rows(); ++r)
            rows.push_back(a.row_vec(r));
        action.push_back(rows);
    }
    j["action"] = action;
    return j;
}

} // namespace stabcat
