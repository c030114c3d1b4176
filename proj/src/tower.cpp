#include "stabcat/tower.hpp"

namespace stabcat {

SyzygyTower::SyzygyTower(ModulePtr base, CoverKind kind) : base_(std::move(base)), kind_(kind) {}

ModulePtr SyzygyTower::level(int n) const
{
    if (n == 0)
        return base_;
    return n > 0 ? step(n - 1).sub : step(n).quot;
}

const ShortExact& SyzygyTower::step(int n) const
{
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = steps_.find(n);
    if (it != steps_.end())
        return it->second;
    ShortExact s = n >= 0 ? syzygy_step(level(n), kind_) : cosyzygy_step(level(n + 1), kind_);
    return steps_.emplace(n, std::move(s)).first->second;
}

TowerPtr make_tower(const ModulePtr& base, CoverKind kind) { return std::make_shared<SyzygyTower>(base, kind); }

TowerPtr offset_tower(const TowerPtr& t, int offset)
{
    return offset == 0 ? t : std::make_shared<OffsetTower>(t, offset);
}

Matrix shift_map(const Tower& tx, int a, const Tower& ty, int b, const Matrix& f, int s)
{
    Matrix g = f;
    for (int i = 0; i < s; ++i)
        g = lift_down(tx.step(a + i), ty.step(b + i), g).sub;
    for (int i = 0; i > s; --i)
        g = lift_up(tx.step(a + i - 1), ty.step(b + i - 1), g);
    return g;
}

Matrix comparison(const Tower& tx, const Tower& ty, int n)
{
    ModulePtr x = tx.base(), y = ty.base();
    if (x->dim() != y->dim())
        throw UsageError("comparison: towers have different bases");
    return shift_map(tx, 0, ty, 0, Matrix::identity(x->dim(), x->prime()), n);
}

} // namespace stabcat
