#include "dihedral/graded.hpp"

namespace dihedral {

std::string to_string(const Bidegree& b) {
  return "(" + std::to_string(b.n) + "," + std::to_string(b.m) + ")";
}

void BigradedModule::add_piece(Bidegree deg, std::vector<std::string> labels) {
  if (deg.n < 0 || deg.m < 0) throw ModuleMismatch("negative degree " + to_string(deg));
  if (pieces_.count(deg)) throw ModuleMismatch("piece " + to_string(deg) + " already present");
  if (labels.empty()) return;
  auto& idx = index_[deg];
  for (std::uint32_t i = 0; i < labels.size(); ++i)
    if (!idx.emplace(labels[i], i).second)
      throw ModuleMismatch("duplicate label '" + labels[i] + "' in " + to_string(deg));
  pieces_[deg] = std::move(labels);
}

std::size_t BigradedModule::dim(Bidegree deg) const {
  auto it = pieces_.find(deg);
  return it == pieces_.end() ? 0 : it->second.size();
}

const std::vector<std::string>& BigradedModule::labels(Bidegree deg) const {
  static const std::vector<std::string> empty;
  auto it = pieces_.find(deg);
  return it == pieces_.end() ? empty : it->second;
}

std::optional<std::uint32_t> BigradedModule::index_of(Bidegree deg,
                                                      const std::string& label) const {
  auto it = index_.find(deg);
  if (it == index_.end()) return std::nullopt;
  auto jt = it->second.find(label);
  if (jt == it->second.end()) return std::nullopt;
  return jt->second;
}

std::vector<Bidegree> BigradedModule::degrees() const {
  std::vector<Bidegree> out;
  for (const auto& [d, l] : pieces_) out.push_back(d);
  return out;
}

std::vector<BasisElement> BigradedModule::basis() const {
  std::vector<BasisElement> out;
  for (const auto& [d, l] : pieces_)
    for (const auto& s : l) out.push_back({s, d.n, d.m});
  return out;
}

int BigradedModule::max_n() const {
  int r = -1;
  for (const auto& [d, l] : pieces_) r = std::max(r, d.n);
  return r;
}

int BigradedModule::max_total() const {
  int r = -1;
  for (const auto& [d, l] : pieces_) r = std::max(r, d.n + d.m);
  return r;
}

bool BigradedModule::same_as(const BigradedModule& o) const {
  return ring_ == o.ring_ && pieces_ == o.pieces_;
}

bool same_module(const ModulePtr& a, const ModulePtr& b) {
  return a == b || (a && b && a->same_as(*b));
}

SignedMap::SignedMap(ModulePtr source, ModulePtr target, Bidegree shift)
    : source_(std::move(source)), target_(std::move(target)), shift_(shift) {
  if (!(source_->ring() == target_->ring())) throw RingMismatch("SignedMap endpoints");
}

SignedMap SignedMap::identity(ModulePtr m) {
  SignedMap f(m, m, {0, 0});
  for (const auto& d : m->degrees()) f.set_block(d, SparseMatrix::identity(m->ring(), m->dim(d)));
  return f;
}

void SignedMap::set_block(Bidegree src, SparseMatrix m) {
  std::size_t r = target_->dim(src + shift_), c = source_->dim(src);
  if (m.rows() != r || m.cols() != c)
    throw ShapeMismatch("block at " + to_string(src) + " is " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()) + ", expected " + std::to_string(r) + "x" +
                        std::to_string(c));
  if (!(m.ring() == ring())) throw RingMismatch("block ring");
  if (m.is_zero())
    blocks_.erase(src);
  else
    blocks_[src] = std::move(m);
}

void SignedMap::add_to_block(Bidegree src, const SparseMatrix& m) {
  auto it = blocks_.find(src);
  if (it == blocks_.end())
    set_block(src, m);
  else
    set_block(src, add(it->second, m));
}

const SparseMatrix* SignedMap::block(Bidegree src) const {
  auto it = blocks_.find(src);
  return it == blocks_.end() ? nullptr : &it->second;
}

SparseMatrix SignedMap::block_or_zero(Bidegree src) const {
  if (const auto* b = block(src)) return *b;
  return SparseMatrix(ring(), target_->dim(src + shift_), source_->dim(src));
}

std::size_t SignedMap::nnz() const {
  std::size_t n = 0;
  for (const auto& [d, b] : blocks_) n += b.nnz();
  return n;
}

SignedMap map_compose(const SignedMap& f, const SignedMap& g) {
  if (!same_module(g.target(), f.source())) throw ModuleMismatch("compose: target(g) != source(f)");
  SignedMap out(g.source(), f.target(), g.shift() + f.shift());
  for (const auto& [d, gb] : g.blocks()) {
    const SparseMatrix* fb = f.block(d + g.shift());
    if (!fb) continue;
    out.set_block(d, compose(*fb, gb));
  }
  return out;
}

namespace {
void check_parallel(const SignedMap& f, const SignedMap& g) {
  if (!same_module(f.source(), g.source()) || !same_module(f.target(), g.target()))
    throw ModuleMismatch("maps have different source or target");
  if (f.shift() != g.shift())
    throw BidegreeMismatch(to_string(f.shift()) + " vs " + to_string(g.shift()));
}
}  // namespace

SignedMap map_add(const SignedMap& f, const SignedMap& g) {
  check_parallel(f, g);
  SignedMap out = f;
  for (const auto& [d, b] : g.blocks()) out.add_to_block(d, b);
  return out;
}

SignedMap map_scale(const mpq_class& c, const SignedMap& f) {
  SignedMap out(f.source(), f.target(), f.shift());
  for (const auto& [d, b] : f.blocks()) out.set_block(d, scale(c, b));
  return out;
}

SignedMap map_scale(const Scalar& c, const SignedMap& f) {
  if (!(c.ring() == f.ring())) throw RingMismatch("map_scale");
  return map_scale(c.value(), f);
}

SignedMap map_subtract(const SignedMap& f, const SignedMap& g) {
  return map_add(f, map_scale(mpq_class(-1), g));
}

bool map_equal(const SignedMap& f, const SignedMap& g) {
  check_parallel(f, g);
  if (f.blocks().size() != g.blocks().size()) return false;
  for (const auto& [d, b] : f.blocks()) {
    const SparseMatrix* o = g.block(d);
    if (!o || !(*o == b)) return false;
  }
  return true;
}

SignedMap map_transpose(const SignedMap& f) {
  Bidegree back{-f.shift().n, -f.shift().m};
  SignedMap out(f.target(), f.source(), back);
  for (const auto& [d, b] : f.blocks()) out.set_block(d + f.shift(), b.transpose());
  return out;
}

SignedMap graded_commutator_check(const SignedMap& d_target, const SignedMap& f,
                                  const SignedMap& d_source, int sign) {
  SignedMap left = map_compose(d_target, f);
  SignedMap right = map_compose(f, d_source);
  return map_subtract(left, map_scale(mpq_class(sign), right));
}

SignedMap graded_commutator_check(const SignedMap& d, const SignedMap& f, int sign) {
  return graded_commutator_check(d, f, d, sign);
}

}  // namespace dihedral
