#include "sigma3/collector.hpp"

#include <stdexcept>

namespace sigma3 {

bool Element::is_identity() const {
  for (int x : exps)
    if (x != 0) return false;
  return true;
}

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int x : e.exps) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

std::vector<int> expand(const PcWord& w) {
  std::vector<int> out;
  for (auto [g, e] : w)
    for (int k = 0; k < e; ++k) out.push_back(g);
  return out;
}

}  // namespace

Collector::Collector(PcPresentation pc) {
  pc.validate();
  auto d = std::make_shared<Data>();
  d->n = pc.size();
  d->p = pc.prime();
  int n = d->n;
  d->power_words.resize(n);
  d->conj_words.resize(n);
  d->single.resize(n);
  d->commutes.resize(n);
  d->central.assign(n, 1);
  for (int j = 0; j < n; ++j) {
    d->single[j] = {j};
    d->power_words[j] = expand(pc.power(j));
    d->conj_words[j].resize(j);
    d->commutes[j].resize(j);
    for (int i = 0; i < j; ++i) {
      const PcWord& c = pc.comm(j, i);
      d->commutes[j][i] = c.empty();
      if (!c.empty()) {
        d->central[j] = 0;
        d->central[i] = 0;
      }
      std::vector<int> w{j};
      auto tail = expand(c);
      w.insert(w.end(), tail.begin(), tail.end());
      d->conj_words[j][i] = std::move(w);
    }
  }
  d->pc = std::move(pc);
  data_ = std::move(d);
}

Element Collector::generator(int i, int k) const {
  Element e = identity();
  mul_gen(e, i, ((k % data_->p) + data_->p) % data_->p);
  return e;
}

Element Collector::from_word(const PcWord& w) const {
  Element e = identity();
  for (auto [g, k] : w) mul_gen(e, g, k);
  return e;
}

PcWord Collector::to_word(const Element& e) const {
  PcWord w;
  for (int i = 0; i < e.size(); ++i)
    if (e.exps[i] != 0) w.emplace_back(i, e.exps[i]);
  return w;
}

void Collector::step(Element& e, int i, std::vector<Frame>& stack) const {
  const Data& d = *data_;
  auto& x = e.exps;
  bool has_suffix = false;
  bool need = false;
  for (int j = i + 1; j < d.n; ++j) {
    if (x[j] != 0 && !d.central[j]) {
      has_suffix = true;
      if (!d.commutes[j][i]) {
        need = true;
        break;
      }
    }
  }
  if (!has_suffix) {
    if (++x[i] == d.p) {
      x[i] = 0;
      if (!d.power_words[i].empty()) stack.push_back({&d.power_words[i], 0, 1});
    }
    return;
  }
  if (!need && x[i] + 1 < d.p) {
    ++x[i];
    return;
  }
  for (int j = d.n - 1; j > i; --j) {
    if (x[j] != 0 && !d.central[j]) {
      const std::vector<int>* w = d.commutes[j][i] ? &d.single[j] : &d.conj_words[j][i];
      stack.push_back({w, 0, x[j]});
      x[j] = 0;
    }
  }
  if (++x[i] == d.p) {
    x[i] = 0;
    if (!d.power_words[i].empty()) stack.push_back({&d.power_words[i], 0, 1});
  }
}

void Collector::run(Element& e, std::vector<Frame>& stack) const {
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.pos == f.word->size()) {
      if (--f.reps == 0) {
        stack.pop_back();
      } else {
        f.pos = 0;
      }
      continue;
    }
    int g = (*f.word)[f.pos++];
    step(e, g, stack);
  }
}

void Collector::mul_gen(Element& e, int gen, int times) const {
  if (times <= 0) return;
  std::vector<Frame> stack;
  stack.push_back({&data_->single[gen], 0, times});
  run(e, stack);
}

void Collector::mul_into(Element& a, const Element& b) const {
  std::vector<Frame> stack;
  for (int j = data_->n - 1; j >= 0; --j)
    if (b.exps[j] != 0) stack.push_back({&data_->single[j], 0, b.exps[j]});
  run(a, stack);
}

Element Collector::mul(const Element& a, const Element& b) const {
  Element r = a;
  mul_into(r, b);
  return r;
}

int Collector::depth(const Element& e) const {
  for (int i = 0; i < e.size(); ++i)
    if (e.exps[i] != 0) return i;
  return e.size();
}

Element Collector::inv(const Element& a) const {
  Element e = a;
  Element x = identity();
  for (;;) {
    int dpt = depth(e);
    if (dpt == data_->n) break;
    int k = data_->p - e.exps[dpt];
    mul_gen(e, dpt, k);
    x.exps[dpt] = k;
  }
  return x;
}

Element Collector::pow(const Element& a, std::int64_t k) const {
  if (k < 0) return pow(inv(a), -k);
  Element result = identity();
  Element base = a;
  while (k > 0) {
    if (k & 1) mul_into(result, base);
    k >>= 1;
    if (k > 0) base = mul(base, base);
  }
  return result;
}

Element Collector::comm(const Element& a, const Element& b) const {
  Element r = inv(mul(b, a));
  mul_into(r, a);
  mul_into(r, b);
  return r;
}

Element Collector::conj(const Element& a, const Element& b) const {
  Element r = inv(b);
  mul_into(r, a);
  mul_into(r, b);
  return r;
}

Element Collector::normalize(const Word& w) const {
  Element e = identity();
  for (const auto& f : w.factors()) {
    int idx = data_->pc.index_of(f.gen);
    if (idx < 0) throw std::invalid_argument("unknown generator " + f.gen);
    if (f.exp > 0 && f.exp < data_->p) {
      mul_gen(e, idx, static_cast<int>(f.exp));
    } else {
      mul_into(e, pow(generator(idx), f.exp));
    }
  }
  return e;
}

}  // namespace sigma3
