#pragma once

#include <stdexcept>
#include <string>

namespace kmtk {

// Base of every error raised by the toolkit. The C API maps each subclass
// onto one status code.
class Error : public std::runtime_error
{
  public:
	using std::runtime_error::runtime_error;
};

// Caller violated an operation's documented precondition.
class PreconditionError : public Error
{
  public:
	using Error::Error;
};

// An enumeration hit its configured element/size limit.
class ResourceError : public Error
{
  public:
	ResourceError(std::string const &what, long long reached)
	    : Error(what), reached_(reached)
	{}
	// Last fully completed degree/level before the limit tripped.
	long long reached() const noexcept { return reached_; }

  private:
	long long reached_;
};

// A truncated series was asked for a coefficient outside its window.
class PrecisionError : public Error
{
  public:
	using Error::Error;
};

// An internal consistency check failed. Always a bug in the model.
class ModelError : public Error
{
  public:
	using Error::Error;
};

inline void require(bool cond, std::string const &msg)
{
	if (!cond)
		throw PreconditionError(msg);
}

} // namespace kmtk
