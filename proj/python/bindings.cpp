#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>

#include "oodbench/corruptions.hpp"
#include "oodbench/error.hpp"

namespace py = pybind11;
using namespace oodbench;

namespace {

// Copies an H x W x 3 uint8 buffer (any exporter of the buffer protocol) into an Image.
Image image_from_buffer(const py::buffer& buffer) {
  const py::buffer_info info = buffer.request();
  if (info.ndim != 3 || info.shape[2] != 3)
    throw Error(ErrorCategory::shape, "expected an H x W x 3 buffer");
  if (info.itemsize != 1 || (info.format != "B" && info.format != "=B" && info.format != "<B"))
    throw Error(ErrorCategory::shape, "expected unsigned 8-bit samples, got format '" + info.format + "'");
  const auto h = static_cast<int>(info.shape[0]);
  const auto w = static_cast<int>(info.shape[1]);
  Image img(w, h);
  const auto* base = static_cast<const std::uint8_t*>(info.ptr);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < 3; ++c)
        img.at(x, y, c) = base[y * info.strides[0] + x * info.strides[1] + c * info.strides[2]];
  return img;
}

py::tuple corrupt(const py::buffer& buffer, const std::string& kind, int level, std::uint64_t seed) {
  const CorruptionKind k = corruption_kind_from_string(kind);
  const Severity s(level);
  const Image input = image_from_buffer(buffer);
  Image output;
  {
    py::gil_scoped_release release;
    output = apply_corruption(input, k, s, seed);
  }
  py::bytes data(reinterpret_cast<const char*>(output.data().data()), output.data().size());
  return py::make_tuple(std::move(data), output.height(), output.width());
}

py::list list_kinds() {
  py::list out;
  for (CorruptionKind k : all_corruption_kinds())
    out.append(py::make_tuple(std::string(to_string(k)), std::string(to_string(category_of(k)))));
  return out;
}

py::dict params_for(const std::string& kind, int level) {
  py::dict out;
  for (const auto& v : severity_params(corruption_kind_from_string(kind), level).values) out[v.name.c_str()] = v.value;
  return out;
}

}  // namespace

PYBIND11_MODULE(_oodbench, m) {
  m.doc() = "Seeded face-image corruptions at five severity levels.";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result(
      [&] { return py::exception<Error>(m, "OodbenchError", PyExc_ValueError); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error_type.get_stored(), (std::string(category_name(e.category())) + ": " + e.what()).c_str());
    }
  });

  m.def("corrupt", &corrupt, py::arg("buffer"), py::arg("kind"), py::arg("level"), py::arg("seed"),
        "Corrupt an H x W x 3 uint8 buffer; returns (bytes, height, width).");
  m.def("list_kinds", &list_kinds, "(name, category) for the twenty corruption kinds.");
  m.def("severity_params", &params_for, py::arg("kind"), py::arg("level"));
  m.def("set_frost_directory", &set_frost_directory, py::arg("path"));
  m.def("frost_directory", &frost_directory);
}
