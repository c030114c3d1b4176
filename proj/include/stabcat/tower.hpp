#pragma once

// Complete resolutions: Omega^n(U) for every integer n with fixed connecting sequences.

#include "stabcat/cover.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace stabcat {

/// Levels Omega^n(U), n in Z, with step(n) = (0 -> level(n+1) -> projective -> level(n) -> 0).
/// Level 0 is the base module itself. Levels are built lazily and then never change.
class Tower {
public:
    virtual ~Tower() = default;
    virtual ModulePtr level(int n) const = 0;
    virtual const ShortExact& step(int n) const = 0;
    ModulePtr base() const { return level(0); }
};

using TowerPtr = std::shared_ptr<const Tower>;

/// Syzygies of covers for n >= 0 and cosyzygies (by duality) for n < 0.
class SyzygyTower : public Tower {
public:
    explicit SyzygyTower(ModulePtr base, CoverKind kind = CoverKind::Minimal);
    ModulePtr level(int n) const override;
    const ShortExact& step(int n) const override;
    CoverKind kind() const { return kind_; }

private:
    ModulePtr base_;
    CoverKind kind_;
    mutable std::recursive_mutex mu_;
    mutable std::map<int, ShortExact> steps_;
};

/// The same tower re-indexed so that level(n) is the inner tower's level(n + offset).
class OffsetTower : public Tower {
public:
    OffsetTower(TowerPtr inner, int offset) : inner_(std::move(inner)), offset_(offset) {}
    ModulePtr level(int n) const override { return inner_->level(n + offset_); }
    const ShortExact& step(int n) const override { return inner_->step(n + offset_); }

private:
    TowerPtr inner_;
    int offset_;
};

TowerPtr make_tower(const ModulePtr& base, CoverKind kind = CoverKind::Minimal);
TowerPtr offset_tower(const TowerPtr& t, int offset);

/// Applies Omega^s to f: tx.level(a) -> ty.level(b), giving tx.level(a+s) -> ty.level(b+s).
/// Positive s lifts through projective covers, negative s extends through injective hulls.
Matrix shift_map(const Tower& tx, int a, const Tower& ty, int b, const Matrix& f, int s);

/// The comparison tx.level(n) -> ty.level(n) induced by the identity of a common base.
Matrix comparison(const Tower& tx, const Tower& ty, int n);

} // namespace stabcat
