"""Test suite for qladder"""
