#include "superdual/report.hpp"

namespace superdual {

CheckResult check_zero(std::string name, const SuperOp& residual) {
  CheckResult r;
  r.name = std::move(name);
  r.residual_nnz = residual.nnz();
  r.pass = r.residual_nnz == 0;
  if (auto nz = residual.mat().first_nonzero()) r.witness = Witness{std::get<0>(*nz), std::get<1>(*nz), std::get<2>(*nz).str()};
  return r;
}

CheckResult compare_ops(std::string name, const SuperOp& lhs, const SuperOp& rhs) {
  if (lhs.size() != rhs.size()) throw std::invalid_argument("compare_ops: shape mismatch in " + name);
  return compare_mats(std::move(name), lhs.mat(), rhs.mat());
}

CheckResult compare_mats(std::string name, const SparseMat<RatFunc>& lhs, const SparseMat<RatFunc>& rhs) {
  auto res = lhs - rhs;
  CheckResult r;
  r.name = std::move(name);
  r.residual_nnz = res.nnz();
  r.pass = r.residual_nnz == 0;
  if (auto nz = res.first_nonzero()) r.witness = Witness{std::get<0>(*nz), std::get<1>(*nz), std::get<2>(*nz).str()};
  return r;
}

bool VerificationReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string VerificationReport::overall() const {
  if (!all_passed()) return "fail";
  return incomplete ? "incomplete" : "pass";
}

Json check_to_json(const CheckResult& c) {
  Json j;
  j["name"] = c.name;
  j["status"] = c.pass ? "pass" : "fail";
  j["residual_nnz"] = c.residual_nnz;
  if (c.witness) j["witness"] = Json{{"row", c.witness->row}, {"col", c.witness->col}, {"value", c.witness->value}};
  j["time_ms"] = c.time_ms;
  if (!c.info.empty()) j["info"] = c.info;
  return j;
}

CheckResult check_from_json(const Json& j) {
  CheckResult c;
  c.name = j.at("name").get<std::string>();
  c.pass = j.at("status").get<std::string>() == "pass";
  c.residual_nnz = j.at("residual_nnz").get<std::size_t>();
  if (j.contains("witness")) {
    const auto& w = j.at("witness");
    c.witness = Witness{w.at("row").get<std::size_t>(), w.at("col").get<std::size_t>(), w.at("value").get<std::string>()};
  }
  c.time_ms = j.at("time_ms").get<double>();
  if (j.contains("info")) c.info = j.at("info");
  return c;
}

}  // namespace superdual
