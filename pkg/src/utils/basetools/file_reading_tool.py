import csv
import os
from typing import List

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from handlers.error_handler import InputError
from resonator import Spectrum

MAGNITUDE_HEADER = ["freq_hz", "mag"]
COMPLEX_HEADER = ["freq_hz", "re", "im"]


class SpectrumFileOutput(BaseModel):
    # Output model for a parsed reflection spectrum.
    model_config = ConfigDict(arbitrary_types_allowed=True)

    file_path: str = Field(..., description="The path of the read file.")
    header: List[str] = Field(..., description="Column names found in the file.")
    spectrum: Spectrum = Field(..., description="Validated spectrum.")


def _parse_float(text: str, file_path: str, line: int, column: str) -> float:
    try:
        return float(text)
    except (TypeError, ValueError):
        raise InputError(
            f"{file_path}:{line}: column {column!r} is not a number: {text!r}"
        ) from None


def read_spectrum_file(file_path: str) -> SpectrumFileOutput:
    # Reads a spectrum CSV with header `freq_hz,mag` or `freq_hz,re,im`.
    if not os.path.exists(file_path):
        raise InputError(f"spectrum file not found: {file_path}")

    with open(file_path, "r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        header = [name.strip() for name in (reader.fieldnames or [])]
        if header not in (MAGNITUDE_HEADER, COMPLEX_HEADER):
            raise InputError(
                f"{file_path}: header must be 'freq_hz,mag' or 'freq_hz,re,im', "
                f"got {','.join(header) or 'nothing'}"
            )
        reader.fieldnames = header
        frequencies: List[float] = []
        values: List[complex] = []
        for row in reader:
            line = reader.line_num
            if None in row or any(row[name] is None for name in header):
                raise InputError(f"{file_path}:{line}: expected {len(header)} columns")
            freq = _parse_float(row["freq_hz"], file_path, line, "freq_hz")
            frequencies.append(freq)
            if header == MAGNITUDE_HEADER:
                values.append(_parse_float(row["mag"], file_path, line, "mag"))
            else:
                re = _parse_float(row["re"], file_path, line, "re")
                im = _parse_float(row["im"], file_path, line, "im")
                values.append(complex(re, im))

    try:
        spectrum = Spectrum(
            frequencies=frequencies,
            values=values,
            magnitude_only=header == MAGNITUDE_HEADER,
        )
    except ValidationError as e:
        raise InputError(f"{file_path}: {e.errors()[0]['msg']}") from e
    return SpectrumFileOutput(file_path=file_path, header=header, spectrum=spectrum)

