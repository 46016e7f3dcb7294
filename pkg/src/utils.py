import os
import json
import traceback
import numpy as np
import pandas as pd
from typing import Dict, Optional, Sequence


def read_json_as_dict(input_path: str) -> Dict:
    """
    Reads a JSON file and returns its content as a dictionary.
    If input_path is a directory, the first JSON file in the directory is read.
    If input_path is a file, the file is read.

    Args:
        input_path (str): The path to the JSON file or directory containing a JSON file.

    Returns:
        dict: The content of the JSON file as a dictionary.

    Raises:
        ValueError: If the input_path is neither a file nor a directory,
                    or if input_path is a directory without any JSON files.
    """
    if os.path.isdir(input_path):
        json_files = sorted(
            os.path.join(input_path, f) for f in os.listdir(input_path) if f.endswith('.json'))
        if not json_files:
            raise ValueError("No JSON files found in the directory")
        json_file_path = json_files[0]
    elif os.path.isfile(input_path):
        json_file_path = input_path
    else:
        raise ValueError("Input path is neither a file nor a directory")

    with open(json_file_path, 'r', encoding="utf-8") as file:
        json_data_as_dict = json.load(file)

    return json_data_as_dict


def read_text_file(file_path: str) -> str:
    """
    Reads a UTF-8 text file.

    Args:
        file_path (str): Path to the file.

    Returns:
        str: The file content.

    Raises:
        FileNotFoundError: If the file does not exist.
    """
    if not os.path.isfile(file_path):
        raise FileNotFoundError(f"File does not exist: {file_path}")
    with open(file_path, 'r', encoding="utf-8") as file:
        return file.read()


def save_dataframe_as_csv(
        dataframe: pd.DataFrame, file_path: str, float_format: str = '%.4f') -> None:
    """
    Saves a pandas dataframe to a CSV file at the given path.

    Args:
    - dataframe (pd.DataFrame): The pandas dataframe to be saved.
    - file_path (str): File path and name to save the CSV file.
    - float_format (str): printf-style format for float columns. Defaults to 4 decimals.

    Raises:
    - IOError: If an error occurs while saving the CSV file.
    """
    try:
        dataframe.to_csv(file_path, index=False, float_format=float_format)
    except IOError as exc:
        raise IOError(f'Error saving CSV file: {exc}') from exc


def write_error_file(file_path: str, exc: BaseException) -> None:
    """
    Writes the traceback of an exception to an error file, creating the directory if needed.

    Args:
        file_path (str): Path of the error file.
        exc (BaseException): The exception to record.
    """
    os.makedirs(os.path.dirname(file_path), exist_ok=True)
    with open(file_path, 'w', encoding="utf-8") as file:
        file.write("".join(traceback.format_exception(type(exc), exc, exc.__traceback__)))


def make_generator(seed: Optional[int], spawn_key: Sequence[int] = ()) -> np.random.Generator:
    """
    Creates a counter-based random generator keyed by a seed and an index path.

    The same (seed, spawn_key) always yields the same stream, independent of how many
    other streams were created before, which keeps parallel work reproducible.

    Args:
        seed (Optional[int]): Base seed. None draws fresh entropy from the OS.
        spawn_key (Sequence[int]): Index path, e.g. (iteration,) or (replication,).

    Returns:
        np.random.Generator: A Philox-backed generator.
    """
    if seed is not None and not isinstance(seed, (int, np.integer)):
        raise ValueError(f"Invalid seed value: {seed}. Cannot create generator.")
    seed_sequence = np.random.SeedSequence(
        entropy=seed, spawn_key=tuple(int(k) for k in spawn_key))
    return np.random.Generator(np.random.Philox(seed_sequence))


def open_unit_uniforms(rng: np.random.Generator, size) -> np.ndarray:
    """
    Draws uniforms strictly inside (0, 1) on the midpoints of a 2**-52 lattice.

    Args:
        rng (np.random.Generator): Source generator.
        size: Output shape.

    Returns:
        np.ndarray: Uniform variates with 0 < u < 1.
    """
    return (rng.integers(0, 2**52, size=size, dtype=np.int64) + 0.5) / 2.0**52


def derive_seed(seed: Optional[int], spawn_key: Sequence[int]) -> int:
    """
    Derives an independent 64-bit seed for a sub-task, e.g. one cell of one replication.

    Args:
        seed (Optional[int]): Base seed. None draws fresh entropy.
        spawn_key (Sequence[int]): Index path of the sub-task.

    Returns:
        int: A seed in [0, 2**64).
    """
    seed_sequence = np.random.SeedSequence(
        entropy=seed, spawn_key=tuple(int(k) for k in spawn_key))
    return int(seed_sequence.generate_state(1, dtype=np.uint64)[0])
