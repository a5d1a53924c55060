#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mlas/bench.hpp"
#include "mlas/builders.hpp"
#include "mlas/exact.hpp"
#include "mlas/gls.hpp"
#include "mlas/latency.hpp"
#include "mlas/vns.hpp"

namespace py = pybind11;
using namespace mlas;

namespace {

std::shared_ptr<const Instance> instance_from_points(
    const std::vector<std::pair<double, double>>& pts, double d, const std::string& source_id) {
  PointSet ps;
  ps.source_id = source_id;
  for (auto [x, y] : pts) ps.points.push_back({x, y});
  return make_instance(std::move(ps), d);
}

std::vector<std::string> violations_as_strings(const Instance& inst, const AggTree& t,
                                               const FullSchedule& s) {
  std::vector<std::string> out;
  for (const auto& v : validate_schedule(inst, t, s)) out.push_back(v.to_string());
  return out;
}

}  // namespace

PYBIND11_MODULE(_mlas, m) {
  m.doc() = "Minimum-latency aggregation scheduling on unit disk graphs";

  py::register_exception<Error>(m, "MlasError");

  py::class_<Instance, std::shared_ptr<Instance>>(m, "Instance")
      .def_property_readonly("n", &Instance::size)
      .def_property_readonly("d", &Instance::critical_distance)
      .def_property_readonly("sink", &Instance::sink)
      .def_property_readonly("source_id",
                             [](const Instance& i) { return i.point_set().source_id; })
      .def("level", &Instance::level, py::arg("v"))
      .def("degree", &Instance::degree, py::arg("v"))
      .def("neighbors", &Instance::neighbors, py::arg("v"))
      .def("has_edge", &Instance::has_edge, py::arg("u"), py::arg("v"))
      .def("points",
           [](const Instance& i) {
             std::vector<std::pair<double, double>> out;
             for (const auto& p : i.point_set().points) out.emplace_back(p.x, p.y);
             return out;
           })
      .def("__repr__", [](const Instance& i) {
        std::ostringstream os;
        os << "Instance(n=" << i.size() << ", d=" << i.critical_distance() << ", sink="
           << i.sink() << ")";
        return os.str();
      });

  py::class_<AggTree>(m, "AggTree")
      .def_property_readonly("root", &AggTree::root)
      .def_property_readonly("parents", [](const AggTree& t) { return t.parents(); })
      .def("parent", &AggTree::parent, py::arg("v"))
      .def("children", &AggTree::children, py::arg("v"))
      .def("is_descendant", &AggTree::is_descendant, py::arg("a"), py::arg("b"))
      .def("reattach", &AggTree::reattach, py::arg("v"), py::arg("new_parent"))
      .def("invert_and_reattach", &AggTree::invert_and_reattach, py::arg("v"), py::arg("p_star"))
      .def("__len__", &AggTree::size);

  py::class_<PrimarySchedule>(m, "PrimarySchedule")
      .def_readonly("f", &PrimarySchedule::f)
      .def_readonly("send_slot", &PrimarySchedule::send_slot)
      .def_readonly("makespan", &PrimarySchedule::makespan);

  py::class_<FullSchedule>(m, "FullSchedule")
      .def_readonly("send_slot", &FullSchedule::send_slot)
      .def_readonly("recipient", &FullSchedule::recipient)
      .def_readonly("length", &FullSchedule::length);

  py::class_<ScheduleResult>(m, "ScheduleResult")
      .def_readonly("tree", &ScheduleResult::tree)
      .def_readonly("schedule", &ScheduleResult::schedule);

  py::class_<GlsResult>(m, "GlsResult")
      .def_readonly("tree", &GlsResult::tree)
      .def_readonly("schedule", &GlsResult::schedule)
      .def_readonly("length", &GlsResult::length);

  py::class_<VnsResult>(m, "VnsResult")
      .def_readonly("tree", &VnsResult::tree)
      .def_readonly("schedule", &VnsResult::schedule)
      .def_readonly("length", &VnsResult::length);

  py::class_<ExactResult>(m, "ExactResult")
      .def_readonly("length", &ExactResult::length)
      .def_readonly("tree", &ExactResult::tree)
      .def_readonly("schedule", &ExactResult::schedule);

  m.def("make_instance", &instance_from_points, py::arg("points"), py::arg("d"),
        py::arg("source_id") = "python");
  m.def("load_instance",
        [](const std::string& path, const std::string& format, double d, int case_nr) {
          const auto fmt = format == "csv" ? PointFormat::csv : PointFormat::orlib;
          return make_instance(load_points_file(path, fmt, case_nr), d);
        },
        py::arg("path"), py::arg("format"), py::arg("d"), py::arg("case_nr") = 0);
  m.def("generate_instance",
        [](int n, double d, std::uint64_t seed) { return generate_instance(n, d, seed); },
        py::arg("n"), py::arg("d"), py::arg("seed"));

  m.def("spt", [](std::shared_ptr<Instance> i) { return spt(std::move(i)); });
  m.def("round_heuristic",
        [](std::shared_ptr<Instance> i) { return round_heuristic(std::move(i)); });
  m.def("mlst", [](std::shared_ptr<Instance> i) { return mlst(std::move(i)); });
  m.def("random_shortest_path",
        [](std::shared_ptr<Instance> i, std::uint64_t seed) {
          Rng rng(seed);
          return random_shortest_path(std::move(i), rng);
        },
        py::arg("inst"), py::arg("seed"));
  m.def("random_min_degree",
        [](std::shared_ptr<Instance> i, std::uint64_t seed) {
          Rng rng(seed);
          return random_min_degree(std::move(i), rng);
        },
        py::arg("inst"), py::arg("seed"));

  m.def("primary_schedule", [](const AggTree& t) { return primary_schedule(t); });
  m.def("branch_reattaching_ls", [](const AggTree& t) { return branch_reattaching_ls(t); });
  m.def("arc_inversion_ls", [](const AggTree& t) { return arc_inversion_ls(t); });
  m.def("tree_distance", &tree_distance, py::arg("a"), py::arg("b"));

  m.def("ndr_schedule", [](const AggTree& t) { return ndr_schedule(t); });
  m.def("validate_schedule",
        [](std::shared_ptr<Instance> i, const AggTree& t, const FullSchedule& s) {
          return violations_as_strings(*i, t, s);
        },
        py::arg("inst"), py::arg("tree"), py::arg("schedule"));
  m.def("schedule_json", &schedule_json, py::arg("tree"), py::arg("schedule"));
  m.def("export_dot", &export_dot, py::arg("tree"), py::arg("schedule"));

  m.def("run_gls",
        [](std::shared_ptr<Instance> i, int pop_size, int offsp_size, int fp_it_count,
           double sp_proportion, double pm, double pls, int k_max, int stall_limit,
           std::uint64_t seed, const std::string& local_search) {
          GlsParams p;
          p.pop_size = pop_size;
          p.offsp_size = offsp_size;
          p.fp_it_count = fp_it_count;
          p.sp_proportion = sp_proportion;
          p.pm = pm;
          p.pls = pls;
          p.k_max = k_max;
          p.stall_limit = stall_limit;
          p.seed = seed;
          const auto ls = local_search == "branch_reattaching"
                              ? LocalSearchKind::branch_reattaching
                              : LocalSearchKind::arc_inversion;
          return run_gls(std::move(i), p, ls);
        },
        py::arg("inst"), py::arg("pop_size") = 50, py::arg("offsp_size") = 20,
        py::arg("fp_it_count") = 150, py::arg("sp_proportion") = 0.6, py::arg("pm") = 0.5,
        py::arg("pls") = 0.5, py::arg("k_max") = 0, py::arg("stall_limit") = 3,
        py::arg("seed") = 1, py::arg("local_search") = "arc_inversion");

  m.def("run_vns",
        [](std::shared_ptr<Instance> i, int k_max, int stall_limit, std::uint64_t seed) {
          VnsParams p;
          p.k_max = k_max;
          p.stall_limit = stall_limit;
          p.seed = seed;
          return run_vns(std::move(i), p);
        },
        py::arg("inst"), py::arg("k_max") = 30, py::arg("stall_limit") = 3, py::arg("seed") = 1);

  m.def("exact_min_latency",
        [](std::shared_ptr<Instance> i, int limit_n) {
          return exact_min_latency(std::move(i), limit_n);
        },
        py::arg("inst"), py::arg("limit_n") = 12);
  m.def("exact_min_primary_latency",
        [](const AggTree& t, int limit_n) { return exact_min_primary_latency(t, limit_n); },
        py::arg("tree"), py::arg("limit_n") = 10);
}
