# -*- coding: utf-8 -*-
import os
import hashlib
import logging
import numpy as np
import spsfom.defaults as defaults


logger = logging.getLogger(__name__)

error_prefix = "spsfom error:"

class SpsfomError(Exception):
    """Exceptions class for spsfom runtime errors"""
    exit_code = 1

class ParameterDomainError(SpsfomError, ValueError):
    """Raised for inputs outside the domain where a quantity is defined."""
    pass

class OracleError(SpsfomError):
    """Raised when the numerical oracle cannot produce a trustworthy value."""
    pass

class ValidationFailure(SpsfomError):
    """Raised when the validate run mode finds a violated bound."""
    exit_code = 1

class ConfigError(SpsfomError):
    """Raised for unknown, duplicate, malformed or missing config keys."""
    exit_code = 2

class OutputError(SpsfomError):
    """Raised when an output file cannot be written."""
    exit_code = 3



def check_positive(name, value, allow_zero=False):
    """Raise a ParameterDomainError unless all entries of value are positive.

    Parameters
    ----------
    name : str
        Name used in the error message.
    value : float or array_like
        The value(s) to check.
    allow_zero : bool, optional
        Accept zero entries. Defaults to False.

    Raises
    ------
    ParameterDomainError
        If a check fails, or if value contains NaN.

    """
    arr = np.asarray(value, dtype=float)
    if np.any(np.isnan(arr)):
        raise ParameterDomainError("{} must not be NaN".format(name))
    if allow_zero:
        if np.any(arr < 0):
            raise ParameterDomainError("{} must be nonnegative, got {}".format(name, value))
    elif np.any(arr <= 0):
        raise ParameterDomainError("{} must be positive, got {}".format(name, value))


def format_float(x, ff=defaults.ff_csv):
    """Format a number (or bool) for CSV output.

    Booleans are written as 0/1 and non-finite values as 'nan', 'inf'
    or '-inf'.
    """
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    x = float(x)
    if np.isnan(x):
        return "nan"
    if np.isinf(x):
        return "inf" if x > 0 else "-inf"
    return ff.format(x)


def content_hash(lines):
    """Return a short sha256 hex digest of a sequence of text lines."""
    h = hashlib.sha256()
    for line in lines:
        h.update(line.encode("utf-8"))
        h.update(b"\n")
    return h.hexdigest()[:16]


def check_output_path(path):
    """Check that an output file can be created before any work is done.

    Parameters
    ----------
    path : str
        The output file path.

    Raises
    ------
    OutputError
        If the parent directory does not exist or is not writable, or if
        the path is an existing directory.

    """
    parent = os.path.dirname(os.path.abspath(path))
    if os.path.isdir(path):
        raise OutputError("Output path {} is a directory.".format(path))
    if not os.path.isdir(parent):
        raise OutputError("Output directory {} does not exist.".format(parent))
    if not os.access(parent, os.W_OK):
        raise OutputError("Output directory {} is not writable.".format(parent))
    if os.path.exists(path) and not os.access(path, os.W_OK):
        raise OutputError("Output file {} is not writable.".format(path))


def write_csv(path, columns, provenance=None):
    """Write named columns to a CSV file.

    The file starts with '#'-prefixed provenance lines, followed by a
    header row and one row per entry, numbers with 17 significant digits.

    Parameters
    ----------
    path : str
        Output file path.
    columns : OrderedDict
        Column name -> sequence of values. All columns must have equal length.
    provenance : OrderedDict, optional
        Key -> value pairs written as '# key: value' lines.

    Raises
    ------
    OutputError
        If the file cannot be written.

    """
    names = list(columns.keys())
    data = [np.ravel(np.asarray(columns[name])) for name in names]
    lengths = set(len(d) for d in data)
    if len(lengths) > 1:
        raise ValueError("CSV columns have unequal lengths: {}".format(sorted(lengths)))

    lines = []
    if provenance:
        for key, value in provenance.items():
            lines.append("# {}: {}".format(key, value))
    lines.append(",".join(names))
    n_rows = lengths.pop() if lengths else 0
    for i in range(n_rows):
        lines.append(",".join(format_float(d[i]) for d in data))

    try:
        with open(path, "w", newline="\n") as f:
            f.write("\n".join(lines) + "\n")
    except OSError as e:
        raise OutputError("Could not write {}: {}".format(path, e))
    logger.info("Wrote %d rows to %s", n_rows, path)


def write_hdf5(path, columns, provenance=None):
    """Write named columns as datasets of an HDF5 file.

    Provenance entries are stored as attributes of the root group.
    Requires the optional h5py package.
    """
    try:
        import h5py
    except ImportError:
        raise OutputError("Writing {} requires the optional h5py package.".format(path))

    try:
        with h5py.File(path, "w") as f:
            for name, values in columns.items():
                f.create_dataset(name.replace("/", "_over_"), data=np.asarray(values))
            for key, value in (provenance or {}).items():
                f.attrs[key] = str(value)
    except OSError as e:
        raise OutputError("Could not write {}: {}".format(path, e))
    logger.info("Wrote %d datasets to %s", len(columns), path)


def write_table(path, columns, provenance=None):
    """Write columns as HDF5 if path ends in .hdf5/.h5, otherwise as CSV."""
    if path.lower().endswith((".hdf5", ".h5")):
        write_hdf5(path, columns, provenance)
    else:
        write_csv(path, columns, provenance)


def generate_report(entries, ff=defaults.ff, indent="  "):
    """Generate the lines of a plain-text report.

    Parameters
    ----------
    entries : list of tuple
        (label, value) pairs. A value of None makes the label a section
        heading; floats are formatted with ff, bools as yes/no.
    ff : str, optional
        Format string for floating-point numbers. Defaults to `defaults.ff`.
    indent : str, optional
        Indentation of non-heading lines.

    Returns
    -------
    list of str
        The report lines.

    """
    width = max([len(label) for label, value in entries if value is not None] + [0])
    lines = []
    for label, value in entries:
        if value is None:
            lines.append("")
            lines.append(label)
            continue
        if isinstance(value, (bool, np.bool_)):
            text = " yes" if value else " no"
        elif isinstance(value, (float, np.floating)):
            text = ff.format(value)
        else:
            # Floats carry a sign column.
            text = " " + str(value)
        lines.append("{}{}  {}".format(indent, label.ljust(width), text))
    return lines


def generate_table(columns, ff=defaults.ff):
    """Generate the lines of a plain-text table from named columns."""
    names = list(columns)
    cells = [[name] for name in names]
    for cell, name in zip(cells, names):
        for value in np.atleast_1d(columns[name]):
            if isinstance(value, (bool, np.bool_)):
                cell.append("yes" if value else "no")
            else:
                cell.append(ff.format(float(value)).strip())
    widths = [max(len(text) for text in cell) for cell in cells]
    return ["  ".join(cell[row].rjust(width) for cell, width in zip(cells, widths))
            for row in range(len(cells[0]))] if cells else []
