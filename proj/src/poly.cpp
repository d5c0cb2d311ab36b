#include "igrr/poly.hpp"

#include <algorithm>
#include <sstream>

namespace igrr {

int RingSpec::degree(const Expo& e) const {
  int d = 0;
  for (size_t i = 0; i < vars.size(); ++i) d += vars[i].weight * e[i];
  return d;
}

RingPtr make_ring(std::vector<RingSpec::Var> vars, int trunc) {
  auto spec = std::make_shared<RingSpec>();
  spec->vars = std::move(vars);
  spec->trunc = trunc;
  return spec;
}

Poly Poly::constant(RingPtr ring, const Rat& c) {
  Poly p(std::move(ring));
  if (c != 0) p.terms_[Expo(p.ring_->vars.size(), 0)] = c;
  return p;
}

Poly Poly::variable(RingPtr ring, size_t index) {
  Poly p(std::move(ring));
  Expo e(p.ring_->vars.size(), 0);
  e[index] = 1;
  p.terms_[e] = 1;
  p.normalize();
  return p;
}

Poly Poly::from_terms(RingPtr ring, TermMap terms) {
  Poly p(std::move(ring));
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

bool Poly::is_integral() const {
  for (const auto& [e, c] : terms_)
    if (!igrr::is_integral(c)) return false;
  return true;
}

int Poly::max_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, ring_->degree(e));
  return d;
}

Rat Poly::coeff(const Expo& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

Rat Poly::constant_term() const { return coeff(Expo(ring_->vars.size(), 0)); }

Poly Poly::component(int k) const {
  Poly out(ring_);
  for (const auto& [e, c] : terms_)
    if (ring_->degree(e) == k) out.terms_[e] = c;
  return out;
}

Poly Poly::operator-() const {
  Poly out(ring_);
  for (const auto& [e, c] : terms_) out.terms_[e] = -c;
  return out;
}

namespace {
void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (a != b) throw PreconditionError("polynomial operands live in different rings");
}
}  // namespace

Poly& Poly::operator+=(const Poly& o) {
  require_same_ring(ring_, o.ring_);
  for (const auto& [e, c] : o.terms_) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  require_same_ring(ring_, o.ring_);
  for (const auto& [e, c] : o.terms_) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, -c);
    } else {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_ring(a.ring_, b.ring_);
  Poly out(a.ring_);
  const size_t nv = a.ring_->vars.size();
  Expo e(nv, 0);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (size_t i = 0; i < nv; ++i) e[i] = ea[i] + eb[i];
      if (a.ring_->degree(e) > a.ring_->trunc) continue;
      auto it = out.terms_.find(e);
      if (it == out.terms_.end())
        out.terms_.emplace(e, ca * cb);
      else
        it->second += ca * cb;
    }
  }
  out.normalize();
  return out;
}

Poly& Poly::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly& Poly::operator/=(const Rat& c) {
  if (c == 0) throw PreconditionError("division of a class by zero");
  for (auto& [e, v] : terms_) v /= c;
  return *this;
}

bool Poly::operator==(const Poly& o) const {
  require_same_ring(ring_, o.ring_);
  return terms_ == o.terms_;
}

Poly Poly::pow(unsigned e) const {
  Poly out = Poly::constant(ring_, 1);
  for (unsigned i = 0; i < e; ++i) out = out * *this;
  return out;
}

Poly Poly::inverse() const {
  Rat c0 = constant_term();
  if (c0 == 0) throw PreconditionError("inverse: class has no constant term");
  // p = c0 (1 - n) with n of positive degree:  p^{-1} = c0^{-1} sum n^k.
  Poly n = Poly::constant(ring_, 1) - *this * (Rat(1) / c0);
  Poly out = Poly::constant(ring_, 1);
  Poly nk = Poly::constant(ring_, 1);
  for (int k = 1; k <= ring_->trunc && !nk.is_zero(); ++k) {
    nk = nk * n;
    out += nk;
  }
  out *= Rat(1) / c0;
  return out;
}

Poly Poly::map_vars(const std::vector<Poly>& images, const RingPtr& target) const {
  if (images.size() != ring_->vars.size())
    throw PreconditionError("map_vars: one image per variable required");
  // Memoize image powers.
  std::vector<std::vector<Poly>> pows(images.size());
  for (size_t i = 0; i < images.size(); ++i)
    pows[i].push_back(Poly::constant(target, 1));
  Poly out(target);
  for (const auto& [e, c] : terms_) {
    Poly m = Poly::constant(target, c);
    for (size_t i = 0; i < images.size(); ++i) {
      if (e[i] == 0) continue;
      while (static_cast<int>(pows[i].size()) <= e[i])
        pows[i].push_back(pows[i].back() * images[i]);
      m = m * pows[i][e[i]];
    }
    out += m;
  }
  return out;
}

void Poly::normalize() {
  // Worklist rewriting: truncate, then apply x^cap relations until each
  // surviving monomial is reduced in every capped variable.
  const auto& vars = ring_->vars;
  const size_t nv = vars.size();
  bool any_cap = false;
  for (const auto& v : vars) any_cap |= v.cap > 0;

  TermMap out;
  auto deposit = [&](const Expo& e, const Rat& c) {
    auto it = out.find(e);
    if (it == out.end()) {
      if (c != 0) out.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) out.erase(it);
    }
  };

  std::vector<std::pair<Expo, Rat>> work;
  work.reserve(terms_.size());
  for (auto& [e, c] : terms_) work.emplace_back(e, c);
  terms_.clear();

  while (!work.empty()) {
    auto [e, c] = std::move(work.back());
    work.pop_back();
    if (c == 0) continue;
    if (ring_->degree(e) > ring_->trunc) continue;
    size_t v = nv;
    if (any_cap) {
      for (size_t i = 0; i < nv; ++i) {
        if (vars[i].cap > 0 && e[i] >= vars[i].cap) {
          v = i;
          break;
        }
      }
    }
    if (v == nv) {
      deposit(e, c);
      continue;
    }
    // e = base + cap * e_v; substitute x_v^cap by its replacement.
    Expo base = e;
    base[v] -= vars[v].cap;
    for (const auto& [re, rc] : vars[v].rewrite) {
      Expo ne = base;
      for (size_t i = 0; i < nv; ++i) ne[i] += re[i];
      work.emplace_back(std::move(ne), c * rc);
    }
  }
  terms_ = std::move(out);
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  // Order by (weighted degree, lex ascending).
  std::vector<const std::pair<const Expo, Rat>*> ord;
  ord.reserve(terms_.size());
  for (const auto& t : terms_) ord.push_back(&t);
  std::stable_sort(ord.begin(), ord.end(),
                   [&](const auto* a, const auto* b) {
                     int da = ring_->degree(a->first), db = ring_->degree(b->first);
                     if (da != db) return da < db;
                     return a->first < b->first;
                   });
  std::ostringstream os;
  bool first = true;
  for (const auto* t : ord) {
    const Expo& e = t->first;
    Rat c = t->second;
    bool neg = c < 0;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    if (neg) c = -c;
    std::string mono;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "·";
      mono += ring_->vars[i].name;
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      os << to_string(c);
    } else if (c == 1) {
      os << mono;
    } else {
      os << to_string(c) << "·" << mono;
    }
  }
  return os.str();
}

}  // namespace igrr
