#include "dpt/boolean_function.hpp"

#include <stdexcept>

#include "dpt/rational.hpp"

namespace dpt {

PartialBooleanFunction::PartialBooleanFunction(int num_vars, std::vector<int8_t> values)
    : n_(num_vars), values_(std::move(values)) {
  if (n_ < 0 || n_ > 24) throw std::invalid_argument("unsupported variable count");
  if (values_.size() != size()) throw std::invalid_argument("truth table size mismatch");
  bool any = false;
  for (int8_t v : values_) {
    if (v != -1 && v != 0 && v != 1) throw std::invalid_argument("truth table value out of range");
    any = any || v != 0;
  }
  if (!any) throw std::invalid_argument("empty domain");
}

PartialBooleanFunction PartialBooleanFunction::from_total(int num_vars,
                                                          const std::function<int(std::uint64_t)>& fn) {
  std::vector<int8_t> t(std::size_t{1} << num_vars);
  for (std::uint64_t x = 0; x < t.size(); ++x) t[x] = static_cast<int8_t>(fn(x));
  return PartialBooleanFunction(num_vars, std::move(t));
}

bool PartialBooleanFunction::is_total() const {
  for (int8_t v : values_)
    if (v == 0) return false;
  return true;
}

bool PartialBooleanFunction::is_constant_on_domain() const {
  int seen = 0;
  for (int8_t v : values_) {
    if (v == 0) continue;
    if (seen == 0) seen = v;
    else if (seen != v) return false;
  }
  return true;
}

std::uint64_t PartialBooleanFunction::domain_size() const {
  std::uint64_t c = 0;
  for (int8_t v : values_) c += v != 0;
  return c;
}

PartialBooleanFunction tensor_xor(std::span<const PartialBooleanFunction> gs) {
  if (gs.empty()) throw std::invalid_argument("tensor_xor needs at least one function");
  int total = 0;
  for (const auto& g : gs) total += g.num_vars();
  std::vector<int8_t> t(std::size_t{1} << total);
  for (std::uint64_t x = 0; x < t.size(); ++x) {
    int v = 1;
    int offset = 0;
    for (const auto& g : gs) {
      std::uint64_t xi = (x >> offset) & (g.size() - 1);
      v *= g.value(xi);
      offset += g.num_vars();
      if (v == 0) break;
    }
    t[x] = static_cast<int8_t>(v);
  }
  return PartialBooleanFunction(total, std::move(t));
}

PartialBooleanFunction compose(const PartialBooleanFunction& F, std::span<const PartialBooleanFunction> fs) {
  if (!F.is_total()) throw std::invalid_argument("outer function must be total");
  if (static_cast<int>(fs.size()) != F.num_vars()) throw std::invalid_argument("arity mismatch in compose");
  int total = 0;
  for (const auto& f : fs) total += f.num_vars();
  std::vector<int8_t> t(std::size_t{1} << total);
  for (std::uint64_t x = 0; x < t.size(); ++x) {
    std::uint64_t y = 0;
    int offset = 0;
    bool ok = true;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      int v = fs[i].value((x >> offset) & (fs[i].size() - 1));
      offset += fs[i].num_vars();
      if (v == 0) {
        ok = false;
        break;
      }
      if (v == -1) y |= std::uint64_t{1} << i;
    }
    t[x] = ok ? static_cast<int8_t>(F.value(y)) : 0;
  }
  return PartialBooleanFunction(total, std::move(t));
}

PartialBooleanFunction parity_function(int n) {
  return PartialBooleanFunction::from_total(n, [](std::uint64_t x) { return chi(~std::uint64_t{0}, x); });
}

PartialBooleanFunction or_function(int n) {
  return PartialBooleanFunction::from_total(n, [](std::uint64_t x) { return x ? -1 : 1; });
}

PartialBooleanFunction and_function(int n) {
  std::uint64_t full = (std::uint64_t{1} << n) - 1;
  return PartialBooleanFunction::from_total(n, [full](std::uint64_t x) { return x == full ? -1 : 1; });
}

PartialBooleanFunction majority_function(int n) {
  if (n % 2 == 0) throw std::invalid_argument("majority needs an odd number of bits");
  return PartialBooleanFunction::from_total(n, [n](std::uint64_t x) { return 2 * popcount(x) > n ? -1 : 1; });
}

PartialBooleanFunction constant_function(int n, int value) {
  return PartialBooleanFunction::from_total(n, [value](std::uint64_t) { return value; });
}

PartialBooleanFunction promise_or_function(int n) {
  return PartialBooleanFunction::from_total(n, [](std::uint64_t x) {
    int w = popcount(x);
    return w == 0 ? 1 : (w == 1 ? -1 : 0);
  });
}

namespace {

int trailing_arity(const std::string& name, std::size_t prefix) {
  std::string digits = name.substr(prefix);
  if (digits.empty() || digits.size() > 1 || digits[0] < '1' || digits[0] > '4')
    throw std::invalid_argument("unknown catalog function: " + name);
  return digits[0] - '0';
}

}  // namespace

PartialBooleanFunction catalog_function(const std::string& name) {
  if (name == "const1") return constant_function(1, 1);
  if (name == "constm1") return constant_function(1, -1);
  if (name == "id1") return parity_function(1);
  if (name.rfind("parity", 0) == 0) return parity_function(trailing_arity(name, 6));
  if (name.rfind("and", 0) == 0) return and_function(trailing_arity(name, 3));
  if (name.rfind("maj", 0) == 0) return majority_function(trailing_arity(name, 3));
  if (name.rfind("por", 0) == 0) return promise_or_function(trailing_arity(name, 3));
  if (name.rfind("or", 0) == 0) return or_function(trailing_arity(name, 2));
  throw std::invalid_argument("unknown catalog function: " + name);
}

std::vector<std::string> catalog_function_names() {
  std::vector<std::string> out{"const1", "constm1", "id1"};
  for (const char* base : {"parity", "or", "and"})
    for (int n = 1; n <= 4; ++n) out.push_back(base + std::to_string(n));
  out.push_back("maj1");
  out.push_back("maj3");
  for (int n = 2; n <= 4; ++n) out.push_back("por" + std::to_string(n));
  return out;
}

}  // namespace dpt
