from field_service.galois_field import FieldElement, FieldSpec, add, inv, mul, sqrt, trace

__all__ = ["FieldElement", "FieldSpec", "add", "inv", "mul", "sqrt", "trace"]
