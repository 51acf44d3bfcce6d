#include "dwork/mono.hpp"

#include <stdexcept>

#include "dwork/errors.hpp"

namespace dwork::sym {

std::string var_name(Var v) {
    if (v < kMaxT) return "t" + std::to_string(v + 1);
    if (v < kMaxT + kMaxG) return "g" + std::to_string(v - kMaxT + 1);
    if (v < kMaxT + kMaxG + kMaxU) return "u" + std::to_string(v - kMaxT - kMaxG + 1);
    if (v == kC) return "c";
    throw UnknownVariable("slot " + std::to_string(v));
}

bool parse_var(const std::string& name, Var& out) {
    if (name == "c") {
        out = kC;
        return true;
    }
    if (name.size() < 2) return false;
    char k = name[0];
    int limit = 0;
    int base = 0;
    if (k == 't') {
        limit = kMaxT;
    } else if (k == 'g') {
        limit = kMaxG;
        base = kMaxT;
    } else if (k == 'u') {
        limit = kMaxU;
        base = kMaxT + kMaxG;
    } else {
        return false;
    }
    int idx = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
        if (name[i] < '0' || name[i] > '9') return false;
        idx = idx * 10 + (name[i] - '0');
        if (idx > 100) return false;
    }
    if (name[1] == '0' || idx < 1 || idx > limit) return false;
    out = static_cast<Var>(base + idx - 1);
    return true;
}

Mono Mono::var(Var v, unsigned e) {
    Mono m;
    m.set_exp(v, e);
    return m;
}

void Mono::set_exp(Var v, unsigned e) {
    if (e > 255) throw std::overflow_error("Mono: exponent overflow");
    auto& slot = e_[kSlots - 1 - v];
    deg_ = static_cast<std::uint16_t>(deg_ - slot + e);
    slot = static_cast<std::uint8_t>(e);
}

VarSet Mono::support() const {
    VarSet s = 0;
    for (int i = 0; i < kSlots; ++i)
        if (e_[i]) s |= var_bit(static_cast<Var>(kSlots - 1 - i));
    return s;
}

Mono Mono::operator*(const Mono& o) const {
    Mono r;
    unsigned overflow = 0;
    for (int i = 0; i < kSlots; ++i) {
        unsigned s = unsigned(e_[i]) + o.e_[i];
        overflow |= s;
        r.e_[i] = static_cast<std::uint8_t>(s);
    }
    if (overflow > 255) throw std::overflow_error("Mono: exponent overflow");
    r.deg_ = static_cast<std::uint16_t>(deg_ + o.deg_);
    return r;
}

bool Mono::divides(const Mono& o) const {
    if (deg_ > o.deg_) return false;
    for (int i = 0; i < kSlots; ++i)
        if (e_[i] > o.e_[i]) return false;
    return true;
}

Mono Mono::operator/(const Mono& o) const {
    Mono r;
    for (int i = 0; i < kSlots; ++i) {
        if (o.e_[i] > e_[i]) throw std::domain_error("Mono: inexact division");
        r.e_[i] = static_cast<std::uint8_t>(e_[i] - o.e_[i]);
    }
    r.deg_ = static_cast<std::uint16_t>(deg_ - o.deg_);
    return r;
}

Mono Mono::gcd(const Mono& a, const Mono& b) {
    Mono r;
    unsigned d = 0;
    for (int i = 0; i < kSlots; ++i) {
        r.e_[i] = std::min(a.e_[i], b.e_[i]);
        d += r.e_[i];
    }
    r.deg_ = static_cast<std::uint16_t>(d);
    return r;
}

Mono Mono::lcm(const Mono& a, const Mono& b) {
    Mono r;
    unsigned d = 0;
    for (int i = 0; i < kSlots; ++i) {
        r.e_[i] = std::max(a.e_[i], b.e_[i]);
        d += r.e_[i];
    }
    r.deg_ = static_cast<std::uint16_t>(d);
    return r;
}

Mono Mono::project(VarSet mask) const {
    Mono r;
    unsigned d = 0;
    for (int i = 0; i < kSlots; ++i) {
        if (mask & var_bit(static_cast<Var>(kSlots - 1 - i))) {
            r.e_[i] = e_[i];
            d += e_[i];
        }
    }
    r.deg_ = static_cast<std::uint16_t>(d);
    return r;
}

std::size_t Mono::hash() const {
    std::size_t h = 1469598103934665603ULL;
    for (auto b : e_) h = (h ^ b) * 1099511628211ULL;
    return h;
}

std::string Mono::to_string() const {
    std::string s;
    for (int v = 0; v < kSlots; ++v) {
        unsigned e = exp(static_cast<Var>(v));
        if (!e) continue;
        if (!s.empty()) s += '*';
        s += var_name(static_cast<Var>(v));
        if (e > 1) s += '^' + std::to_string(e);
    }
    return s;
}

}  // namespace dwork::sym
