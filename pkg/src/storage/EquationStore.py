"""
EquationStore Module - reading and writing equation files
Equation files are JSON documents
    {"terms": [{"c": [w,x,y,z], "b": [w,x,y,z]}, ...],
     "conj_terms": [...], "rhs": [w,x,y,z], "truth": [w,x,y,z]}
validated with pydantic. File operations return result dicts; parse errors
inside the library raise SchemaError.
"""

import json
from pathlib import Path
from typing import Annotated, Dict, List, Optional

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.algebra.Quaternion import Quaternion
from src.errors import SchemaError
from src.linalg.LinearEquation import LinearEquation, terms_from_lists

FiniteFloat = Annotated[float, Field(allow_inf_nan=False)]
QuaternionList = Annotated[List[FiniteFloat], Field(min_length=4, max_length=4)]


class TermModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    c: QuaternionList
    b: QuaternionList


class EquationFile(BaseModel):
    """Schema of an equation file; field names are part of the file format."""

    model_config = ConfigDict(extra="forbid")

    terms: List[TermModel] = Field(default_factory=list)
    conj_terms: Optional[List[TermModel]] = None
    rhs: QuaternionList
    truth: Optional[QuaternionList] = None

    @model_validator(mode="after")
    def _at_least_one_term(self) -> "EquationFile":
        if not self.terms and not self.conj_terms:
            raise ValueError("at least one of 'terms' / 'conj_terms' must be non-empty")
        return self

    def to_equation(self) -> LinearEquation:
        def pairs(models):
            return terms_from_lists([(t.c, t.b) for t in models or []])
        return LinearEquation(pairs(self.terms), pairs(self.conj_terms), Quaternion.from_list(self.rhs))

    def truth_quaternion(self) -> Optional[Quaternion]:
        return Quaternion.from_list(self.truth) if self.truth is not None else None


def parse_equation(document: Dict) -> EquationFile:
    """
    Raises:
        SchemaError: If the document does not match the equation file schema
    """
    try:
        return EquationFile.model_validate(document)
    except ValidationError as e:
        raise SchemaError(f"Invalid equation file: {e}") from e


def equation_document(eq: LinearEquation, truth: Optional[Quaternion] = None) -> Dict:
    document = eq.to_dict()
    if truth is not None:
        document["truth"] = truth.to_list()
    return document


def dumps_equation(eq: LinearEquation, truth: Optional[Quaternion] = None) -> str:
    """Stable text form: fixed key order, repr-exact floats, trailing newline."""
    return json.dumps(equation_document(eq, truth), indent=2) + "\n"


class EquationStore:
    """
    File access for equation files and CSV tables.
    """

    def __init__(self, root: Optional[str] = None):
        """
        Args:
            root: Directory relative paths are resolved against (cwd when omitted)
        """
        self.root = Path(root).resolve() if root else None

    def _resolve(self, file_path: str) -> Path:
        path = Path(file_path)
        if self.root is not None and not path.is_absolute():
            path = self.root / path
        return path

    # ==================== EQUATION FILES ====================

    def read_equation(self, file_path: str) -> Dict:
        """
        Read and validate an equation file.

        Returns:
            Dict with 'success', 'equation', 'truth', 'error' keys
        """
        path = self._resolve(file_path)
        if not path.exists():
            return {"success": False, "equation": None, "truth": None,
                    "error": f"File not found: {file_path}"}
        try:
            with open(path, 'r', encoding='utf-8') as f:
                document = json.load(f)
            parsed = parse_equation(document)
            return {
                "success": True,
                "equation": parsed.to_equation(),
                "truth": parsed.truth_quaternion(),
                "path": str(path),
                "error": None
            }
        except json.JSONDecodeError as e:
            return {"success": False, "equation": None, "truth": None, "error": f"Invalid JSON: {e}"}
        except UnicodeDecodeError as e:
            return {"success": False, "equation": None, "truth": None, "error": f"Invalid encoding: {e}"}
        except SchemaError as e:
            return {"success": False, "equation": None, "truth": None, "error": str(e)}
        except OSError as e:
            return {"success": False, "equation": None, "truth": None, "error": f"Read error: {e}"}

    def write_equation(self, file_path: str, eq: LinearEquation, truth: Optional[Quaternion] = None) -> Dict:
        """
        Returns:
            Dict with 'success', 'path', 'error' keys
        """
        path = self._resolve(file_path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, 'w', encoding='utf-8', newline='\n') as f:
                f.write(dumps_equation(eq, truth))
            return {"success": True, "path": str(path), "error": None}
        except OSError as e:
            return {"success": False, "path": None, "error": f"Write error: {e}"}

    # ==================== CSV ====================

    def write_csv(self, file_path: str, table: pd.DataFrame) -> Dict:
        """
        Returns:
            Dict with 'success', 'path', 'rows', 'error' keys
        """
        path = self._resolve(file_path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            table.to_csv(path, index=False)
            return {"success": True, "path": str(path), "rows": len(table), "error": None}
        except OSError as e:
            return {"success": False, "path": None, "rows": 0, "error": f"Write error: {e}"}
