#include "geomodal/coalgfun.hpp"

#include <algorithm>

namespace geomodal {

const Carrier& TopFunctor::carrier(const FinSpace& X) const {
  if (X.size() > max_points_)
    throw ResourceError(name_ + " carrier capped at " + std::to_string(max_points_) +
                        " points, got " + std::to_string(X.size()));
  auto key = std::make_pair(X.points(), X.opens());
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(std::move(key), make_carrier(X)).first;
  return it->second;
}

ContMap TopFunctor::on_map(const ContMap& f) const {
  const Carrier& src = carrier(f.source);
  const Carrier& tgt = carrier(f.target);
  std::vector<int> asg(src.space.size());
  for (int i = 0; i < src.space.size(); ++i) {
    auto j = apply_elem(f, i);
    if (!j)
      throw InternalError(name_ + " action left the carrier at element " +
                          src.space.point_name(i));
    asg[i] = *j;
  }
  ContMap Tf(src.space, tgt.space, std::move(asg));
  if (!check_continuous(Tf))
    throw InternalError(name_ + " action on a continuous map is not continuous");
  return Tf;
}

Mask TopFunctor::preimage(const ContMap& f, Mask c) const {
  const Carrier& src = carrier(f.source);
  Mask out = 0;
  for (int i = 0; i < src.space.size(); ++i) {
    auto j = apply_elem(f, i);
    if (j && mask_has(c, *j)) out |= Mask{1} << i;
  }
  return out;
}

FinSpace TopFunctor::classifier() const {
  return kh_scoped_ ? FinSpace::discrete({"0", "1"}) : FinSpace::sierpinski();
}

int TopFunctor::builtin_arity(const std::string& lifting) const {
  for (const auto& n : builtin_lifting_names())
    if (n == lifting) return 1;  // all builtins are unary
  throw ValidationError("unknown lifting '" + lifting + "' for functor " + name_);
}

Mask TopFunctor::eval_lifting_any(const std::string& lifting, const FinSpace& X,
                                  const std::vector<Mask>& args) const {
  return eval_lifting(lifting, X, args);
}

// default payload = carrier index; concrete functors with big carriers
// override with carrier-free payloads
TElem TopFunctor::elem_payload(const FinSpace&, int carrier_index) const {
  return TElem::index(carrier_index);
}

std::optional<int> TopFunctor::payload_index(const FinSpace& X, const TElem& e) const {
  if (const int* i = std::get_if<int>(&e.v))
    if (*i >= 0 && *i < carrier(X).space.size()) return *i;
  return std::nullopt;
}

bool TopFunctor::payload_valid(const FinSpace& X, const TElem& e) const {
  return payload_index(X, e).has_value();
}

std::optional<TElem> TopFunctor::payload_apply(const ContMap& f, const TElem& e) const {
  auto i = payload_index(f.source, e);
  if (!i) return std::nullopt;
  auto j = apply_elem(f, *i);
  if (!j) return std::nullopt;
  return elem_payload(f.target, *j);
}

bool TopFunctor::payload_in_lifting(const std::string& lifting, const FinSpace& X,
                                    const std::vector<Mask>& args,
                                    const TElem& e) const {
  auto i = payload_index(X, e);
  return i && mask_has(eval_lifting(lifting, X, args), *i);
}

std::string TopFunctor::payload_name(const FinSpace& X, const TElem& e) const {
  auto i = payload_index(X, e);
  return i ? carrier(X).space.point_name(*i) : std::string("<invalid>");
}

bool is_finite_kh(const FinSpace& X) { return X.is_discrete(); }

// ---------------------------------------------------------------------------
// Vietoris

namespace {

class VietorisFunctor final : public TopFunctor {
 public:
  VietorisFunctor() : TopFunctor("vietoris", /*kh_scoped=*/true, /*max_points=*/6) {}

  Carrier make_carrier(const FinSpace& X) const override {
    std::vector<Mask> closed;
    for (Mask o : X.opens()) closed.push_back(X.full() & ~o);
    std::sort(closed.begin(), closed.end());
    std::vector<std::string> names;
    for (Mask c : closed) names.push_back(X.subset_name(c));
    std::vector<Mask> sub;
    const int n = static_cast<int>(closed.size());
    for (Mask a : X.opens()) {
      Mask box = 0, dia = 0;
      for (int i = 0; i < n; ++i) {
        if ((closed[i] & ~a) == 0) box |= Mask{1} << i;
        if ((closed[i] & a) != 0) dia |= Mask{1} << i;
      }
      sub.push_back(box);
      sub.push_back(dia);
    }
    Carrier c;
    c.space = FinSpace::from_subbase(std::move(names), sub);
    c.closed_sets = std::move(closed);
    return c;
  }

  std::optional<int> apply_elem(const ContMap& f, int elem) const override {
    const Carrier& src = carrier(f.source);
    auto img = payload_apply(f, TElem::closed(src.closed_sets[elem]));
    if (!img) return std::nullopt;
    return payload_index(f.target, *img);
  }

  std::vector<std::string> builtin_lifting_names() const override {
    return {"box", "dia"};
  }

  Mask eval_lifting(const std::string& lifting, const FinSpace& X,
                    const std::vector<Mask>& args) const override {
    return eval_lifting_any(lifting, X, args);
  }

  Mask eval_lifting_any(const std::string& lifting, const FinSpace& X,
                        const std::vector<Mask>& args) const override {
    if (args.size() != 1) throw ValidationError("vietoris liftings are unary");
    const Carrier& c = carrier(X);
    Mask out = 0;
    for (std::size_t i = 0; i < c.closed_sets.size(); ++i)
      if (payload_in_lifting(lifting, X, args, TElem::closed(c.closed_sets[i])))
        out |= Mask{1} << i;
    return out;
  }

  TElem elem_payload(const FinSpace& X, int i) const override {
    return TElem::closed(carrier(X).closed_sets[i]);
  }

  std::optional<int> payload_index(const FinSpace& X, const TElem& e) const override {
    const Mask* m = std::get_if<Mask>(&e.v);
    if (!m) return std::nullopt;
    const auto& cs = carrier(X).closed_sets;
    auto it = std::lower_bound(cs.begin(), cs.end(), *m);
    if (it == cs.end() || *it != *m) return std::nullopt;
    return static_cast<int>(it - cs.begin());
  }

  bool payload_valid(const FinSpace& X, const TElem& e) const override {
    const Mask* m = std::get_if<Mask>(&e.v);
    return m && (*m & ~X.full()) == 0 && X.is_closed(*m);
  }

  std::optional<TElem> payload_apply(const ContMap& f, const TElem& e) const override {
    const Mask* m = std::get_if<Mask>(&e.v);
    if (!m) return std::nullopt;
    // closure of the image; plain images of closed sets need not be closed
    // outside the discrete fragment
    return TElem::closed(f.target.closure(f.image(*m)));
  }

  bool payload_in_lifting(const std::string& lifting, const FinSpace&,
                          const std::vector<Mask>& args, const TElem& e) const override {
    const Mask* m = std::get_if<Mask>(&e.v);
    if (!m) throw ValidationError("vietoris payload must be a closed set");
    if (args.size() != 1) throw ValidationError("vietoris liftings are unary");
    if (lifting == "box") return (*m & ~args[0]) == 0;
    if (lifting == "dia") return (*m & args[0]) != 0;
    throw ValidationError("unknown vietoris lifting '" + lifting + "'");
  }

  std::string payload_name(const FinSpace& X, const TElem& e) const override {
    const Mask* m = std::get_if<Mask>(&e.v);
    return m ? X.subset_name(*m) : "<invalid>";
  }
};

// ---------------------------------------------------------------------------
// monotone neighbourhood functor D_kh

std::string collection_name(const FinSpace& X, const std::vector<Mask>& W) {
  std::string s = "{";
  for (std::size_t i = 0; i < W.size(); ++i) {
    if (i) s += ",";
    s += X.subset_name(W[i]);
  }
  return s + "}";
}

constexpr int kDkhPayloadPoints = 6;  // 2^(2^6) raw collections is the edge

void check_dkh_payload_bound(const FinSpace& X) {
  if (X.size() > kDkhPayloadPoints)
    throw ResourceError("monotone-neighbourhood payload operations capped at " +
                        std::to_string(kDkhPayloadPoints) + " points");
}

class DkhFunctor final : public TopFunctor {
 public:
  DkhFunctor() : TopFunctor("dkh", /*kh_scoped=*/true, /*max_points=*/4) {}

  Carrier make_carrier(const FinSpace& X) const override {
    Carrier c;
    c.collections = dkh_collections(X);
    std::vector<std::string> names;
    for (const auto& W : c.collections) names.push_back(collection_name(X, W));
    const int n = static_cast<int>(c.collections.size());
    if (n > kMaxPoints)
      throw ResourceError("D_kh carrier has " + std::to_string(n) +
                          " collections; the space bound is 64 points");
    std::vector<Mask> sub;
    for (Mask a : X.opens()) {
      Mask boxbar = 0, slash = 0;
      for (int i = 0; i < n; ++i) {
        const auto& W = c.collections[i];
        if (std::binary_search(W.begin(), W.end(), a)) boxbar |= Mask{1} << i;
        if (!std::binary_search(W.begin(), W.end(), X.full() & ~a))
          slash |= Mask{1} << i;
      }
      sub.push_back(boxbar);
      sub.push_back(slash);
    }
    c.space = FinSpace::from_subbase(std::move(names), sub);
    return c;
  }

  std::optional<int> apply_elem(const ContMap& f, int elem) const override {
    const Carrier& src = carrier(f.source);
    auto img = payload_apply(f, TElem::collection(src.collections[elem]));
    if (!img) return std::nullopt;
    return payload_index(f.target, *img);
  }

  std::vector<std::string> builtin_lifting_names() const override {
    return {"box", "dia"};
  }

  Mask eval_lifting(const std::string& lifting, const FinSpace& X,
                    const std::vector<Mask>& args) const override {
    return eval_lifting_any(lifting, X, args);
  }

  Mask eval_lifting_any(const std::string& lifting, const FinSpace& X,
                        const std::vector<Mask>& args) const override {
    if (args.size() != 1) throw ValidationError("dkh liftings are unary");
    const Carrier& c = carrier(X);
    Mask out = 0;
    for (std::size_t i = 0; i < c.collections.size(); ++i)
      if (payload_in_lifting(lifting, X, args, TElem::collection(c.collections[i])))
        out |= Mask{1} << i;
    return out;
  }

  TElem elem_payload(const FinSpace& X, int i) const override {
    return TElem::collection(carrier(X).collections[i]);
  }

  std::optional<int> payload_index(const FinSpace& X, const TElem& e) const override {
    const auto* W = std::get_if<std::vector<Mask>>(&e.v);
    if (!W) return std::nullopt;
    const auto& cs = carrier(X).collections;
    for (std::size_t i = 0; i < cs.size(); ++i)
      if (cs[i] == *W) return static_cast<int>(i);
    return std::nullopt;
  }

  bool payload_valid(const FinSpace& X, const TElem& e) const override {
    const auto* W = std::get_if<std::vector<Mask>>(&e.v);
    return W && dkh_collection_valid(X, *W);
  }

  std::optional<TElem> payload_apply(const ContMap& f, const TElem& e) const override {
    const auto* W = std::get_if<std::vector<Mask>>(&e.v);
    if (!W) return std::nullopt;
    check_dkh_payload_bound(f.target);
    std::vector<Mask> img;
    for (Mask a = 0; a <= f.target.full(); ++a)
      if (std::binary_search(W->begin(), W->end(), f.preimage(a))) img.push_back(a);
    if (!dkh_collection_valid(f.target, img)) return std::nullopt;
    return TElem::collection(std::move(img));
  }

  bool payload_in_lifting(const std::string& lifting, const FinSpace& X,
                          const std::vector<Mask>& args, const TElem& e) const override {
    const auto* W = std::get_if<std::vector<Mask>>(&e.v);
    if (!W) throw ValidationError("dkh payload must be a collection of subsets");
    if (args.size() != 1) throw ValidationError("dkh liftings are unary");
    if (lifting == "box") return std::binary_search(W->begin(), W->end(), args[0]);
    if (lifting == "dia")
      return !std::binary_search(W->begin(), W->end(), X.full() & ~args[0]);
    throw ValidationError("unknown dkh lifting '" + lifting + "'");
  }

  std::string payload_name(const FinSpace& X, const TElem& e) const override {
    const auto* W = std::get_if<std::vector<Mask>>(&e.v);
    return W ? collection_name(X, *W) : "<invalid>";
  }
};

// ---------------------------------------------------------------------------
// trivial functor F X = 𝟚

class TrivialFunctor final : public TopFunctor {
 public:
  TrivialFunctor() : TopFunctor("trivial", /*kh_scoped=*/false, /*max_points=*/64) {}

  Carrier make_carrier(const FinSpace&) const override {
    Carrier c;
    c.space = FinSpace::two_trivial();
    return c;
  }

  std::optional<int> apply_elem(const ContMap&, int elem) const override {
    return elem;  // F f = id
  }

  std::vector<std::string> builtin_lifting_names() const override { return {"triv"}; }

  Mask eval_lifting(const std::string& lifting, const FinSpace& X,
                    const std::vector<Mask>& args) const override {
    if (lifting != "triv")
      throw ValidationError("unknown trivial-functor lifting '" + lifting + "'");
    if (args.size() != 1) throw ValidationError("triv is unary");
    return full_mask(carrier(X).space.size());
  }

  std::optional<TElem> payload_apply(const ContMap&, const TElem& e) const override {
    return e;
  }

  bool payload_valid(const FinSpace&, const TElem& e) const override {
    const int* i = std::get_if<int>(&e.v);
    return i && (*i == 0 || *i == 1);
  }

  bool payload_in_lifting(const std::string& lifting, const FinSpace&,
                          const std::vector<Mask>&, const TElem&) const override {
    if (lifting != "triv")
      throw ValidationError("unknown trivial-functor lifting '" + lifting + "'");
    return true;
  }
};

}  // namespace

FunctorPtr vietoris_functor() {
  static FunctorPtr f = std::make_shared<VietorisFunctor>();
  return f;
}

FunctorPtr dkh_functor() {
  static FunctorPtr f = std::make_shared<DkhFunctor>();
  return f;
}

FunctorPtr trivial_functor() {
  static FunctorPtr f = std::make_shared<TrivialFunctor>();
  return f;
}

bool dkh_collection_valid(const FinSpace& X, const std::vector<Mask>& W) {
  check_dkh_payload_bound(X);
  if (!std::is_sorted(W.begin(), W.end())) return false;
  auto in_w = [&](Mask u) { return std::binary_search(W.begin(), W.end(), u); };
  for (Mask u = 0; u <= X.full(); ++u) {
    bool rhs = false;
    for (Mask c = u;; c = (c - 1) & u) {  // subsets of u
      if (X.is_closed(c)) {
        bool all_open_sups = true;
        for (Mask b : X.opens())
          if ((c & ~b) == 0 && !in_w(b)) {
            all_open_sups = false;
            break;
          }
        if (all_open_sups) {
          rhs = true;
          break;
        }
      }
      if (c == 0) break;
    }
    if (rhs != in_w(u)) return false;
  }
  return true;
}

std::vector<std::vector<Mask>> dkh_collections(const FinSpace& X) {
  const int n = X.size();
  if (n > 4)
    throw ResourceError("D_kh carrier enumeration is hard-capped at 4 points, got " +
                        std::to_string(n));
  const int nsub = 1 << n;
  // openSups[c] over subset positions: the open supersets of closed c
  std::vector<std::uint64_t> open_sups(nsub, 0);
  for (Mask c = 0; c < static_cast<Mask>(nsub); ++c) {
    if (!X.is_closed(c)) continue;
    for (Mask a : X.opens())
      if ((c & ~a) == 0) open_sups[c] |= std::uint64_t{1} << a;
  }
  std::vector<std::vector<Mask>> out;
  for (std::uint64_t W = 0; W < (std::uint64_t{1} << nsub); ++W) {
    bool ok = true;
    for (Mask u = 0; u < static_cast<Mask>(nsub) && ok; ++u) {
      bool rhs = false;
      for (Mask c = u;; c = (c - 1) & u) {  // subsets of u
        if (X.is_closed(c) && (open_sups[c] & ~W) == 0) {
          rhs = true;
          break;
        }
        if (c == 0) break;
      }
      if (rhs != bool(W >> u & 1)) ok = false;
    }
    if (ok) {
      std::vector<Mask> ws;
      for (Mask u = 0; u < static_cast<Mask>(nsub); ++u)
        if (W >> u & 1) ws.push_back(u);
      out.push_back(std::move(ws));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Set functors

namespace {

class PowersetFunctor final : public SetFunctor {
 public:
  PowersetFunctor() : SetFunctor("powerset") {}

  std::vector<std::uint64_t> carrier(int n) const override {
    if (n > 6) throw ResourceError("powerset carrier capped at 6 points");
    std::vector<std::uint64_t> out;
    for (Mask b = 0; b < (Mask{1} << n); ++b) out.push_back(b);
    return out;
  }

  std::uint64_t apply(const std::vector<int>& f, int n_src, int, std::uint64_t b)
      const override {
    Mask img = 0;
    for (int i = 0; i < n_src; ++i)
      if (mask_has(b, i)) img |= Mask{1} << f[i];
    return img;
  }

  std::vector<std::string> lifting_names() const override { return {"box", "dia"}; }

  std::vector<int> eval_lifting(const std::string& lifting, int n,
                                const std::vector<Mask>& args) const override {
    if (args.size() != 1) throw ValidationError("powerset liftings are unary");
    std::vector<int> out;
    auto car = carrier(n);
    for (std::size_t i = 0; i < car.size(); ++i) {
      Mask b = car[i];
      bool in = lifting == "box" ? (b & ~args[0]) == 0
              : lifting == "dia" ? (b & args[0]) != 0
                                 : throw ValidationError("unknown powerset lifting '" +
                                                         lifting + "'");
      if (in) out.push_back(static_cast<int>(i));
    }
    return out;
  }

  std::string element_name(int n, std::uint64_t elem,
                           const std::vector<std::string>& points) const override {
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < n; ++i)
      if (elem >> i & 1) {
        if (!first) s += ",";
        s += points[i];
        first = false;
      }
    return s + "}";
  }
};

class MonotoneFunctor final : public SetFunctor {
 public:
  MonotoneFunctor() : SetFunctor("monotone") {}

  std::vector<std::uint64_t> carrier(int n) const override {
    if (n > 4) throw ResourceError("monotone carrier capped at 4 points");
    const int nsub = 1 << n;
    std::vector<std::uint64_t> out;
    for (std::uint64_t W = 0; W < (std::uint64_t{1} << nsub); ++W) {
      bool up = true;
      for (Mask a = 0; a < static_cast<Mask>(nsub) && up; ++a) {
        if (!(W >> a & 1)) continue;
        for (Mask b = a; b < static_cast<Mask>(nsub); ++b)
          if ((a & ~b) == 0 && !(W >> b & 1)) {
            up = false;
            break;
          }
      }
      if (up) out.push_back(W);
    }
    return out;
  }

  std::uint64_t apply(const std::vector<int>& f, int n_src, int n_tgt,
                      std::uint64_t W) const override {
    std::uint64_t img = 0;
    for (Mask a = 0; a < (Mask{1} << n_tgt); ++a) {
      Mask pre = 0;
      for (int i = 0; i < n_src; ++i)
        if (mask_has(a, f[i])) pre |= Mask{1} << i;
      if (W >> pre & 1) img |= std::uint64_t{1} << a;
    }
    return img;
  }

  std::vector<std::string> lifting_names() const override { return {"box", "dia"}; }

  std::vector<int> eval_lifting(const std::string& lifting, int n,
                                const std::vector<Mask>& args) const override {
    if (args.size() != 1) throw ValidationError("monotone liftings are unary");
    std::vector<int> out;
    auto car = carrier(n);
    Mask compl_pos = full_mask(n) & ~args[0];
    for (std::size_t i = 0; i < car.size(); ++i) {
      std::uint64_t W = car[i];
      bool in = lifting == "box" ? bool(W >> args[0] & 1)
              : lifting == "dia" ? !(W >> compl_pos & 1)
                                 : throw ValidationError("unknown monotone lifting '" +
                                                         lifting + "'");
      if (in) out.push_back(static_cast<int>(i));
    }
    return out;
  }

  std::string element_name(int n, std::uint64_t elem,
                           const std::vector<std::string>& points) const override {
    std::string s = "{";
    bool first = true;
    for (Mask a = 0; a < (Mask{1} << (1 << n)); ++a) {
      if (!(elem >> a & 1)) continue;
      if (!first) s += ",";
      std::string t = "{";
      bool f2 = true;
      for (int i = 0; i < n; ++i)
        if (mask_has(a, i)) {
          if (!f2) t += ",";
          t += points[i];
          f2 = false;
        }
      s += t + "}";
      first = false;
    }
    return s + "}";
  }
};

}  // namespace

SetFunctorPtr set_functor(const std::string& name) {
  static SetFunctorPtr p = std::make_shared<PowersetFunctor>();
  static SetFunctorPtr d = std::make_shared<MonotoneFunctor>();
  if (name == "powerset") return p;
  if (name == "monotone") return d;
  throw ValidationError("unknown set functor '" + name + "'");
}

// ---------------------------------------------------------------------------
// coalgebras and models

Coalgebra coalgebra_from_indices(FinSpace space, FunctorPtr functor,
                                 const std::vector<int>& gamma_indices) {
  Coalgebra A;
  A.functor = std::move(functor);
  std::vector<TElem> gamma;
  for (int i : gamma_indices) gamma.push_back(A.functor->elem_payload(space, i));
  A.space = std::move(space);
  A.gamma = std::move(gamma);
  return A;
}

bool gamma_continuous(const Coalgebra& A) {
  // the builtin lifting images form a subbase of the carrier topology, so
  // continuity of γ is openness of their γ-preimages
  const FinSpace& X = A.space;
  for (const auto& name : A.functor->builtin_lifting_names()) {
    int ar = A.functor->builtin_arity(name);
    const auto& opens = X.opens();
    std::vector<std::size_t> ix(ar, 0);
    do {
      std::vector<Mask> args(ar);
      for (int i = 0; i < ar; ++i) args[i] = opens[ix[i]];
      Mask u = 0;
      for (int x = 0; x < X.size(); ++x)
        if (A.functor->payload_in_lifting(name, X, args, A.gamma[x]))
          u |= Mask{1} << x;
      if (!X.is_open(u)) return false;
    } while ([&] {
      for (auto& i : ix) {
        if (++i < opens.size()) return true;
        i = 0;
      }
      return false;
    }());
  }
  return true;
}

void validate_coalgebra(const Coalgebra& A) {
  if (static_cast<int>(A.gamma.size()) != A.space.size())
    throw ValidationError("gamma is not total on the points");
  for (int x = 0; x < A.space.size(); ++x)
    if (!A.functor->payload_valid(A.space, A.gamma[x]))
      throw ValidationError("gamma value at " + A.space.point_name(x) +
                            " is not in the functor carrier");
  if (!gamma_continuous(A))
    throw ValidationError("gamma is not continuous into the carrier space");
}

void validate_model(const GeomModel& M) {
  validate_coalgebra(M.coalg);
  for (const auto& [p, v] : M.valuation)
    if (!M.coalg.space.is_open(v))
      throw ValidationError("valuation of '" + p + "' is not an open");
}

bool is_coalg_morphism(const ContMap& f, const Coalgebra& A, const Coalgebra& B) {
  if (A.functor->name() != B.functor->name())
    throw ValidationError("coalgebras have different functors");
  if (!check_continuous(f)) return false;
  for (int x = 0; x < A.space.size(); ++x) {
    auto lhs = A.functor->payload_apply(f, A.gamma[x]);
    if (!lhs || !(*lhs == B.gamma[f(x)])) return false;
  }
  return true;
}

bool is_model_morphism(const ContMap& f, const GeomModel& M, const GeomModel& N) {
  if (!is_coalg_morphism(f, M.coalg, N.coalg)) return false;
  // f⁻¹ ∘ V' = V, over the union of the letters
  for (const auto& [p, v] : M.valuation) {
    auto it = N.valuation.find(p);
    Mask vn = it == N.valuation.end() ? 0 : it->second;
    if (f.preimage(vn) != v) return false;
  }
  for (const auto& [p, v] : N.valuation)
    if (!M.valuation.count(p) && f.preimage(v) != 0) return false;
  return true;
}

DisjointUnion disjoint_union(const std::vector<GeomModel>& models) {
  if (models.empty()) throw ValidationError("disjoint union of no models");
  FunctorPtr T = models[0].coalg.functor;
  for (const auto& m : models)
    if (m.coalg.functor->name() != T->name())
      throw ValidationError("disjoint union requires a shared functor");
  std::vector<std::string> points;
  std::vector<Mask> sub;
  std::vector<int> offset;
  for (std::size_t k = 0; k < models.size(); ++k) {
    offset.push_back(static_cast<int>(points.size()));
    for (const auto& p : models[k].space().points())
      points.push_back(std::to_string(k) + ":" + p);
  }
  const int total = static_cast<int>(points.size());
  if (total > kMaxPoints) throw ResourceError("disjoint union exceeds 64 points");
  for (std::size_t k = 0; k < models.size(); ++k)
    for (Mask o : models[k].space().opens()) sub.push_back(o << offset[k]);
  FinSpace U = FinSpace::from_subbase(points, sub);
  std::vector<ContMap> incl;
  for (std::size_t k = 0; k < models.size(); ++k) {
    std::vector<int> asg(models[k].space().size());
    for (int i = 0; i < models[k].space().size(); ++i) asg[i] = offset[k] + i;
    incl.emplace_back(models[k].space(), U, std::move(asg));
  }
  std::vector<TElem> gamma(total, TElem::index(0));
  for (std::size_t k = 0; k < models.size(); ++k)
    for (int i = 0; i < models[k].space().size(); ++i) {
      auto e = T->payload_apply(incl[k], models[k].coalg.gamma[i]);
      if (!e)
        throw InternalError("functor action along a disjoint-union inclusion "
                            "left the carrier");
      gamma[offset[k] + i] = std::move(*e);
    }
  GeomModel out;
  out.coalg = Coalgebra{U, T, std::move(gamma)};
  for (std::size_t k = 0; k < models.size(); ++k)
    for (const auto& [p, v] : models[k].valuation)
      out.valuation[p] |= v << offset[k];
  validate_model(out);
  return DisjointUnion{std::move(out), std::move(incl)};
}

ProductSpace product_space(const FinSpace& X, const FinSpace& Y) {
  const int nx = X.size(), ny = Y.size();
  if (nx * ny > kMaxPoints) throw ResourceError("product exceeds 64 points");
  std::vector<std::string> points;
  std::vector<int> a1, a2;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      points.push_back("(" + X.point_name(i) + "," + Y.point_name(j) + ")");
      a1.push_back(i);
      a2.push_back(j);
    }
  std::vector<Mask> sub;
  for (Mask u : X.opens()) {
    Mask m = 0;
    for (int k = 0; k < nx * ny; ++k)
      if (mask_has(u, a1[k])) m |= Mask{1} << k;
    sub.push_back(m);
  }
  for (Mask v : Y.opens()) {
    Mask m = 0;
    for (int k = 0; k < nx * ny; ++k)
      if (mask_has(v, a2[k])) m |= Mask{1} << k;
    sub.push_back(m);
  }
  FinSpace P = FinSpace::from_subbase(points, sub);
  return ProductSpace{P, ContMap(P, X, a1), ContMap(P, Y, a2)};
}

Subspace subspace(const FinSpace& X, Mask pts) {
  std::vector<std::string> names;
  std::vector<int> amb;
  for (int i = 0; i < X.size(); ++i)
    if (mask_has(pts, i)) {
      names.push_back(X.point_name(i));
      amb.push_back(i);
    }
  std::vector<Mask> sub;
  for (Mask o : X.opens()) {
    Mask m = 0;
    for (std::size_t k = 0; k < amb.size(); ++k)
      if (mask_has(o, amb[k])) m |= Mask{1} << k;
    sub.push_back(m);
  }
  FinSpace S = FinSpace::from_subbase(names, sub);
  return Subspace{S, ContMap(S, X, amb), amb};
}

}  // namespace geomodal
