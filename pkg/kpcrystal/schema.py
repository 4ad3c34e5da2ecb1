"""
JSON schema validation for kpcrystal artifacts.

Every artifact (Kostant partition, Lusztig datum, tableau, crystal graph,
suite report, fixture) carries a `schema_version` naming its schema in
schemas/. Artifacts are validated with jsonschema before they are turned
into objects, and all errors are collected, not just the first.
"""

import json
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from jsonschema import SchemaError, ValidationError
from jsonschema.validators import Draft202012Validator

from kpcrystal.errors import InvalidInputError, SchemaValidationError


SCHEMA_DIR = Path(__file__).parent.parent / "schemas"

SCHEMA_VERSIONS = (
    "kostant_partition_v0",
    "lusztig_datum_v0",
    "tableau_v0",
    "crystal_graph_v0",
    "suite_report_v0",
    "fixture_v0",
)


class ValidationResult:
    """
    Structured result from validating an artifact.

    Attributes:
        is_valid: True if the artifact passes schema validation
        errors: validation error messages
        schema_version: the schema the artifact was checked against
        path: file that was validated, if any
    """

    def __init__(
        self,
        is_valid: bool,
        errors: Optional[List[str]] = None,
        schema_version: Optional[str] = None,
        path: Optional[str] = None,
    ):
        self.is_valid = is_valid
        self.errors = errors or []
        self.schema_version = schema_version
        self.path = path

    def __repr__(self):
        status = "Valid" if self.is_valid else "Invalid"
        return f"<ValidationResult {self.schema_version} {status}, {len(self.errors)} errors>"


@lru_cache(maxsize=None)
def load_schema(schema_version: str) -> Dict:
    """
    Load and sanity-check the schema for `schema_version`.

    Raises:
        InvalidInputError: unknown schema version
        SchemaError: the schema file itself is malformed
    """
    if schema_version not in SCHEMA_VERSIONS:
        raise InvalidInputError(
            f"Unknown schema_version {schema_version!r}; expected one of {', '.join(SCHEMA_VERSIONS)}"
        )
    schema_path = SCHEMA_DIR / f"{schema_version}.schema.json"
    with open(schema_path, "r", encoding="utf-8") as f:
        schema = json.load(f)
    Draft202012Validator.check_schema(schema)
    return schema


def load_json(path: Path) -> Dict:
    """
    Raises:
        InvalidInputError: missing file or invalid JSON
    """
    if not path.exists():
        raise InvalidInputError(f"File not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"{path}: JSON parse error at line {e.lineno}, column {e.colno}: {e.msg}")


def format_validation_error(error: ValidationError) -> str:
    """
    Format a jsonschema ValidationError as "path: message".

    Example output:
        "parts[2].mult: 0 is less than the minimum of 1"
        "(root): Missing required property 'rows'"
    """
    path_parts: List[str] = []
    for part in error.absolute_path:
        if isinstance(part, int) and path_parts:
            path_parts[-1] = f"{path_parts[-1]}[{part}]"
        else:
            path_parts.append(str(part))
    json_path = ".".join(path_parts) if path_parts else "(root)"

    message = error.message
    if error.validator == "required":
        missing_property = error.message.split("'")[1]
        message = f"Missing required property '{missing_property}'"
    elif error.validator == "enum":
        message = f"Value not allowed. Must be one of: {error.validator_value}"
    elif error.validator == "type":
        message = f"Wrong type. Expected {error.validator_value}"
    return f"{json_path}: {message}"


def validate_dict(data: Dict, schema_version: Optional[str] = None) -> Tuple[bool, List[str]]:
    """
    Validate an artifact dictionary.

    Args:
        data: the artifact
        schema_version: schema to use; defaults to data["schema_version"]

    Returns:
        (is_valid, error messages)
    """
    if not isinstance(data, dict):
        return False, ["(root): Wrong type. Expected object"]
    version = schema_version or data.get("schema_version")
    if not version:
        return False, ["(root): Missing required property 'schema_version'"]
    try:
        schema = load_schema(version)
    except InvalidInputError as e:
        return False, [str(e)]
    validator = Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(map(str, e.absolute_path)))
    return (not errors), [format_validation_error(err) for err in errors]


def validate_artifact(path: Path, schema_version: Optional[str] = None) -> ValidationResult:
    """
    Validate an artifact file.

    Example:
        >>> result = validate_artifact(Path("datum.json"))
        >>> if not result.is_valid:
        >>>     for error in result.errors:
        >>>         print(f"  - {error}")
    """
    try:
        data = load_json(path)
    except InvalidInputError as e:
        return ValidationResult(is_valid=False, errors=[str(e)], path=str(path))
    version = schema_version or (data.get("schema_version") if isinstance(data, dict) else None)
    try:
        is_valid, errors = validate_dict(data, version)
    except SchemaError as e:
        return ValidationResult(False, [f"Schema error: {e.message}"], version, str(path))
    return ValidationResult(is_valid, errors, version, str(path))


def load_artifact(path: Path, expected: Optional[str] = None) -> Dict:
    """
    Load a JSON artifact and validate it, raising on any problem.

    Args:
        path: artifact file
        expected: required schema_version, if the caller needs a specific kind

    Raises:
        InvalidInputError: unreadable file or wrong artifact kind
        SchemaValidationError: schema violations (all of them in `.errors`)
    """
    data = load_json(path)
    version = data.get("schema_version") if isinstance(data, dict) else None
    if expected is not None and version != expected:
        raise InvalidInputError(f"{path}: expected a {expected} artifact, got {version!r}")
    is_valid, errors = validate_dict(data, version)
    if not is_valid:
        raise SchemaValidationError(
            f"{path} failed {version or 'schema'} validation with {len(errors)} error(s)", errors
        )
    return data
